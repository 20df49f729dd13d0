//! Serde glue: complex scalars serialize as `{ "re": .., "im": .. }`.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::Serializer;

pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut out = s.serialize_struct("Complex", 2)?;
    out.serialize_field("re", &c.re)?;
    out.serialize_field("im", &c.im)?;
    out.end()
}
