//! Flag-value parsing, chiefly the wavenumber grammar.

use anyhow::{bail, Context, Result};
use helmsym::WaveNumber;

/// Parse "<int>pi+<real>" or a plain real into a wavenumber.
///
/// The pi part stays symbolic so the k-not-in-pi*Z hypothesis is enforced
/// structurally; "3pi" is rejected, "5pi+1" gives (5, 1), "16.5" gives
/// (0, 16.5).
pub fn parse_wavenumber(text: &str) -> Result<WaveNumber> {
    let t = text.trim();
    if let Some(idx) = t.find("pi") {
        let head = &t[..idx];
        let tail = &t[idx + 2..];
        let multiple: u32 = head
            .parse()
            .with_context(|| format!("'{head}' is not a nonnegative integer pi-multiple"))?;
        let offset: f64 = if tail.is_empty() {
            0.0
        } else if let Some(rest) = tail.strip_prefix('+') {
            rest.parse()
                .with_context(|| format!("'{rest}' is not a real offset"))?
        } else {
            bail!("expected '+<real>' after 'pi' in '{t}'");
        };
        Ok(WaveNumber::new(multiple, offset)?)
    } else {
        let v: f64 = t
            .parse()
            .with_context(|| format!("'{t}' is not a wavenumber"))?;
        Ok(WaveNumber::new(0, v)?)
    }
}

/// Parse a comma-separated list of wavenumber specs.
pub fn parse_wavenumber_list(text: &str) -> Result<Vec<WaveNumber>> {
    text.split(',').map(parse_wavenumber).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn accepts_pi_forms() {
        let k = parse_wavenumber("5pi+1").unwrap();
        assert_eq!(k.pi_multiple(), 5);
        assert_eq!(k.offset(), 1.0);
        let k = parse_wavenumber("80pi+1").unwrap();
        assert_eq!(k.pi_multiple(), 80);
        let k = parse_wavenumber("2pi+0.5").unwrap();
        assert_eq!((k.pi_multiple(), k.offset()), (2, 0.5));
    }

    #[test]
    fn accepts_plain_reals() {
        let k = parse_wavenumber("16.5").unwrap();
        assert_eq!(k.pi_multiple(), 0);
        assert_eq!(k.offset(), 16.5);
    }

    #[test]
    fn rejects_pi_multiples_of_pi() {
        assert!(parse_wavenumber("3pi").is_err());
        assert!(parse_wavenumber("0pi").is_err());
        assert!(parse_wavenumber(&format!("{}", PI)).is_err());
        assert!(parse_wavenumber("0").is_err());
        assert!(parse_wavenumber("-2.0").is_err());
    }

    #[test]
    fn rejects_malformed_specs() {
        assert!(parse_wavenumber("pi+1").is_err());
        assert!(parse_wavenumber("5pi-1").is_err());
        assert!(parse_wavenumber("5pix").is_err());
        assert!(parse_wavenumber("abc").is_err());
    }

    #[test]
    fn parses_lists() {
        let ks = parse_wavenumber_list("5pi+1,10pi+1").unwrap();
        assert_eq!(ks.len(), 2);
        assert_eq!(ks[1].pi_multiple(), 10);
    }
}
