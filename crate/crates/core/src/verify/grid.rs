//! Grid files: one point per line, `identity=SUM_B_C b=1.4 c=2.6 z=0.3+0.0i`.
//! `#` starts a comment; blank lines are ignored.

use super::{CheckId, ConfigError};
use crate::identities::ParamPoint;
use crate::Complex;

/// One parsed grid line.
#[derive(Debug, Clone, PartialEq)]
pub struct GridLine {
    /// 1-based line number in the source.
    pub line: usize,
    /// The check named by `identity=`, if any.
    pub check: Option<CheckId>,
    pub point: ParamPoint,
}

/// Parses `x`, `x+yi`, `x-yi`, `yi` or `i` with optional exponents.
pub fn parse_complex(s: &str) -> Option<Complex> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return s.parse().ok().map(|x| Complex::new(x, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let imag = |t: &str| -> Option<f64> {
        match t {
            "" | "+" => Some(1.0),
            "-" => Some(-1.0),
            _ => t.parse().ok(),
        }
    };
    match split {
        Some(j) => Some(Complex::new(body[..j].parse().ok()?, imag(&body[j..])?)),
        None => Some(Complex::new(0.0, imag(body)?)),
    }
}

/// Parses a whole grid file.
pub fn parse_grid(text: &str) -> Result<Vec<GridLine>, ConfigError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |reason: String| ConfigError::Grid { line, reason };
        let mut check = None;
        let mut point = ParamPoint::new();
        for token in content.split_whitespace() {
            let (key, value) = token.split_once('=').ok_or_else(|| err(format!("`{token}` is not key=value")))?;
            if key == "identity" {
                if check.is_some() {
                    return Err(err("identity given twice".into()));
                }
                check = Some(CheckId::from_name(value).ok_or_else(|| err(format!("unknown identity `{value}`")))?);
                continue;
            }
            if key.is_empty() {
                return Err(err(format!("empty parameter name in `{token}`")));
            }
            let v = parse_complex(value).ok_or_else(|| err(format!("`{value}` is not a number")))?;
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(err(format!("`{value}` is not finite")));
            }
            if point.0.insert(key.to_string(), v).is_some() {
                return Err(err(format!("parameter `{key}` given twice")));
            }
        }
        if point.0.is_empty() {
            return Err(err("no parameters".into()));
        }
        if let Some(c) = check {
            let mut want = c.param_names().to_vec();
            want.sort_unstable();
            let have: Vec<&str> = point.0.keys().map(String::as_str).collect();
            if want != have {
                return Err(err(format!("{c} takes parameters {}", c.param_names().join(", "))));
            }
        }
        out.push(GridLine { line, check, point });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::identities::IdentityId;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1.5"), Some(c64(1.5, 0.0)));
        assert_eq!(parse_complex("0.3+0.0i"), Some(c64(0.3, 0.0)));
        assert_eq!(parse_complex("-2-1e-3i"), Some(c64(-2.0, -1e-3)));
        assert_eq!(parse_complex("1e-2+2E+1i"), Some(c64(0.01, 20.0)));
        assert_eq!(parse_complex("-i"), Some(c64(0.0, -1.0)));
        assert_eq!(parse_complex("2.5i"), Some(c64(0.0, 2.5)));
        assert_eq!(parse_complex("1+i"), Some(c64(1.0, 1.0)));
        assert_eq!(parse_complex("abc"), None);
        assert_eq!(parse_complex("1+xi"), None);
    }

    #[test]
    fn grid_lines_comments_and_blanks() {
        let g = parse_grid("# header\n\nidentity=SUM_B_C b=1.4 c=2.6 z=0.3+0.0i  # trailing\nb=1 z=0.25\n").unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].line, 3);
        assert_eq!(g[0].check, Some(CheckId::Identity(IdentityId::SumBC)));
        assert_eq!(g[0].point.to_string(), "b=1.4 c=2.6 z=0.3");
        assert_eq!(g[1].check, None);
    }

    #[test]
    fn malformed_lines_name_their_line() {
        for (text, line) in [
            ("b=1 z\n", 1),
            ("\nidentity=NOPE b=1\n", 2),
            ("b=1 b=2\n", 1),
            ("identity=SUM_B b=1\n", 1),
            ("b=x\n", 1),
            ("identity=SUM_B\n", 1),
        ] {
            match parse_grid(text) {
                Err(ConfigError::Grid { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
