pub mod ext;
pub mod field;
pub mod laurent;
pub mod poly;
pub mod ratfunc;
pub mod series;
pub mod text;

pub use ext::{embed_prime_root, subfield_express, Embedding, ExtElem, ExtField};
pub use field::{is_prime, make_context, Field, FieldContext, FqElem, Limits};
pub use laurent::Laurent;
pub use poly::{FqPoly, PolyRing};
pub use ratfunc::{infinity_valuation, Fraction, RatFunc, RatFuncField, Valuation};
pub use series::SeriesPoly;
