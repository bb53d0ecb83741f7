//! Parsing of command-line values and tensor files.

use std::fmt;
use std::path::Path;

use gpthide::gpt::ModelId;
use gpthide::linalg::Mat;

/// A user-input problem, reported with exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// `quantum:2` or `spherical:4,spherical:3`; a single id is used for both sides.
pub fn parse_models(s: &str) -> Result<(ModelId, ModelId), InputError> {
    let ids: Vec<ModelId> = s
        .split(',')
        .map(|p| p.parse::<ModelId>().map_err(|e| InputError(e.to_string())))
        .collect::<Result<_, _>>()?;
    match ids.as_slice() {
        [a] => Ok((*a, *a)),
        [a, b] => Ok((*a, *b)),
        _ => Err(InputError(format!(
            "expected one or two model ids, got {}",
            ids.len()
        ))),
    }
}

/// `α,β`.
pub fn parse_pair(s: &str) -> Result<(f64, f64), InputError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || InputError(format!("expected two numbers 'α,β', got '{s}'"));
    let [a, b] = parts.as_slice() else {
        return Err(bad());
    };
    Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
}

/// Inclusive range `a..b` with optional step `a..b:s`, or a single value. `b < a` is empty.
pub fn parse_range(s: &str) -> Result<Vec<usize>, InputError> {
    let bad = |why: &str| InputError(format!("invalid range '{s}': {why}"));
    let (span, step) = match s.split_once(':') {
        Some((span, step)) => (
            span,
            step.trim()
                .parse::<usize>()
                .map_err(|_| bad("step is not an integer"))?,
        ),
        None => (s, 1),
    };
    if step == 0 {
        return Err(bad("step must be positive"));
    }
    let (lo, hi) = match span.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (span, span),
    };
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|_| bad("bounds must be integers"))?;
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|_| bad("bounds must be integers"))?;
    Ok((lo..=hi).step_by(step).collect())
}

/// Dense row-major matrix from CSV text; dimensions are inferred.
pub fn parse_tensor(text: &str) -> Result<Mat, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            InputError(format!("line {line}: {e}"))
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let row = record
            .iter()
            .enumerate()
            .map(|(col, field)| {
                field.parse::<f64>().map_err(|_| {
                    InputError(format!(
                        "line {line}, column {}: '{field}' is not a number",
                        col + 1
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    let Some(width) = rows.first().map(Vec::len) else {
        return Err(InputError("tensor file has no rows".into()));
    };
    let flat: Vec<f64> = rows.concat();
    Ok(Mat::from_row_slice(rows.len(), width, &flat))
}

pub fn read_tensor(path: &Path) -> Result<Mat, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    parse_tensor(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn models_and_pairs() {
        assert_eq!(
            parse_models("quantum:2").unwrap(),
            (ModelId::Quantum(2), ModelId::Quantum(2))
        );
        assert_eq!(
            parse_models("spherical:4, cubic:3").unwrap(),
            (ModelId::Spherical(4), ModelId::Cubic(3))
        );
        assert!(parse_models("quantum:2,quantum:2,quantum:2").is_err());
        assert!(parse_models("qubit:2").is_err());
        assert_eq!(parse_pair("1,-1").unwrap(), (1.0, -1.0));
        assert!(parse_pair("1").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..6").unwrap(), vec![2, 3, 4, 5, 6]);
        assert_eq!(parse_range("16..48:8").unwrap(), vec![16, 24, 32, 40, 48]);
        assert_eq!(parse_range("3").unwrap(), vec![3]);
        assert!(parse_range("6..2").unwrap().is_empty());
        assert!(parse_range("a..2").is_err());
        assert!(parse_range("2..4:0").is_err());
    }

    #[test]
    fn tensors() {
        let m = parse_tensor("1, 0, 0\n0,1,0\n# comment\n0,0,1\n").unwrap();
        assert_eq!(m, Mat::identity(3, 3));
        let e = parse_tensor("1,2\n3,x\n").unwrap_err();
        assert_eq!(e.0, "line 2, column 2: 'x' is not a number");
        let e = parse_tensor("1,2\n3\n").unwrap_err();
        assert!(e.0.starts_with("line 2"), "{e}");
        assert!(parse_tensor("").is_err());
    }
}
