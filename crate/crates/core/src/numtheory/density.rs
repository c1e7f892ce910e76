use super::sieve::{count_ranges, Predicate, SieveConfig};
use super::NumTheoryError;

/// Exact member count of a set at one checkpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub limit: u64,
    pub count: u64,
}

impl Checkpoint {
    pub fn ratio(&self) -> f64 {
        self.count as f64 / self.limit as f64
    }

    /// `count / limit` rounded half-up to six decimals.
    pub fn ratio_string(&self) -> String {
        format_ratio(self.count, self.limit)
    }
}

/// Formats `num / den` (with `num <= den`) to six decimals using integer
/// arithmetic only, so the text is identical on every platform.
pub fn format_ratio(num: u64, den: u64) -> String {
    assert!(den > 0 && num <= den);
    let scaled = (u128::from(num) * 2_000_000 + u128::from(den)) / (2 * u128::from(den));
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

/// Checkpointed counts `|X ∩ [1, n]|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensitySeries {
    pub predicate_name: String,
    pub checkpoints: Vec<Checkpoint>,
}

impl DensitySeries {
    pub fn at(&self, limit: u64) -> Option<&Checkpoint> {
        self.checkpoints.iter().find(|c| c.limit == limit)
    }

    pub fn ratio_at(&self, limit: u64) -> Option<f64> {
        self.at(limit).map(Checkpoint::ratio)
    }
}

/// Powers of ten up to `limit`, followed by `limit` itself.
pub fn default_checkpoints(limit: u64) -> Vec<u64> {
    let mut out: Vec<u64> = std::iter::successors(Some(10u64), |&x| x.checked_mul(10))
        .take_while(|&x| x <= limit)
        .collect();
    if out.last() != Some(&limit) && limit >= 1 {
        out.push(limit);
    }
    out
}

/// Counts the members of `pred` at each checkpoint. The series always ends
/// at `limit`; an empty checkpoint list selects [`default_checkpoints`].
pub fn density_series(
    pred: Predicate,
    limit: u64,
    checkpoints: &[u64],
    config: &SieveConfig,
) -> Result<DensitySeries, NumTheoryError> {
    if limit == 0 {
        return Err(NumTheoryError::InvalidArgument("limit must be positive".into()));
    }
    let mut points = if checkpoints.is_empty() {
        default_checkpoints(limit)
    } else {
        checkpoints.to_vec()
    };
    if points.first() == Some(&0) || points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(NumTheoryError::InvalidArgument(
            "checkpoints must be positive and strictly increasing".into(),
        ));
    }
    if points.last().is_some_and(|&c| c > limit) {
        return Err(NumTheoryError::InvalidArgument(format!("checkpoint beyond limit {limit}")));
    }
    if points.last() != Some(&limit) {
        points.push(limit);
    }
    let mut ranges = Vec::with_capacity(points.len());
    let mut lo = 1;
    for &c in &points {
        ranges.push((lo, c + 1));
        lo = c + 1;
    }
    let counts = count_ranges(pred, &ranges, config)?;
    let mut total = 0;
    let checkpoints = points
        .iter()
        .zip(counts)
        .map(|(&limit, c)| {
            total += c;
            Checkpoint { limit, count: total }
        })
        .collect();
    Ok(DensitySeries { predicate_name: pred.to_string(), checkpoints })
}
