use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct GridError(pub String);

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn number(s: &str) -> Result<f64, GridError> {
    let v: f64 = s.trim().parse().map_err(|_| GridError(format!("not a number: {s:?}")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(GridError(format!("not finite: {s:?}")))
    }
}

/// Parses `start:stop:step` (inclusive of `stop` when it lies on the lattice) or a comma list.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, GridError> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(GridError("empty grid".into()));
    }
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [start, stop, step] = parts.as_slice() else {
            return Err(GridError(format!("expected start:stop:step, got {spec:?}")));
        };
        let (start, stop, step) = (number(start)?, number(stop)?, number(step)?);
        if step <= 0.0 {
            return Err(GridError(format!("step must be positive, got {step}")));
        }
        if stop < start {
            return Err(GridError(format!("stop {stop} below start {start}")));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        if count > 1_000_000 {
            return Err(GridError(format!("grid of {count} points is too large")));
        }
        Ok((0..count).map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12).collect())
    } else {
        spec.split(',').map(number).collect()
    }
}
