//! Words, finite presentations, Wirtinger presentations and Tietze moves.

mod presentation;
mod smith;
mod tietze;
mod wirtinger;
mod word;

pub use presentation::Presentation;
pub use smith::{smith_diagonal, AbelianInvariants};
pub use tietze::{apply_tietze, expand_consequence, ConjugateFactor, Consequence, TietzeMove};
pub use wirtinger::{Crossing, LinkDiagram};
pub use word::{is_generator_name, Letter, Word};
