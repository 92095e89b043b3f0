/// Formats a float with 17 significant digits so it re-parses bit-exactly.
pub(crate) fn f17(x: f64) -> String {
    format!("{:.16e}", x)
}
