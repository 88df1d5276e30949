//! `min:max:steps` grid strings.

use spinring::linspace;

pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid spec `{spec}` is not of the form min:max:steps"));
    }
    let min: f64 = parts[0]
        .parse()
        .map_err(|_| format!("grid spec `{spec}`: bad min `{}`", parts[0]))?;
    let max: f64 = parts[1]
        .parse()
        .map_err(|_| format!("grid spec `{spec}`: bad max `{}`", parts[1]))?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|_| format!("grid spec `{spec}`: bad steps `{}`", parts[2]))?;
    if steps == 0 {
        return Err(format!("grid spec `{spec}`: steps must be at least 1"));
    }
    if steps > 1 && (!min.is_finite() || !max.is_finite() || min >= max) {
        return Err(format!("grid spec `{spec}`: need min < max"));
    }
    Ok(linspace(min, max, steps))
}
