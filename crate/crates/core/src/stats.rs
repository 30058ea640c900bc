//! Small descriptive-statistics helpers used by the analyses.

/// Streaming mean / variance / co-moment accumulator (Welford update).
#[derive(Debug, Clone, Copy, Default)]
pub struct Moments {
    n: usize,
    mean_x: f64,
    mean_y: f64,
    m2_x: f64,
    m2_y: f64,
    co: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64, y: f64) {
        self.n += 1;
        let k = self.n as f64;
        let dx = x - self.mean_x;
        self.mean_x += dx / k;
        let dy = y - self.mean_y;
        self.mean_y += dy / k;
        self.m2_x += dx * (x - self.mean_x);
        self.m2_y += dy * (y - self.mean_y);
        self.co += dx * (y - self.mean_y);
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut m = Moments::default();
        for (x, y) in pairs {
            m.push(x, y);
        }
        m
    }

    pub fn count(&self) -> usize {
        self.n
    }

    pub fn mean_x(&self) -> f64 {
        self.mean_x
    }

    pub fn mean_y(&self) -> f64 {
        self.mean_y
    }

    /// Least-squares slope of y on x. A constant y gives slope 0 whatever x
    /// does; otherwise `None` when x has no spread.
    pub fn slope(&self) -> Option<f64> {
        if self.m2_x > 0.0 {
            Some(self.co / self.m2_x)
        } else if self.m2_y == 0.0 {
            Some(0.0)
        } else {
            None
        }
    }

    /// Pearson correlation; `None` when either variable has no spread.
    pub fn pearson(&self) -> Option<f64> {
        if self.m2_x > 0.0 && self.m2_y > 0.0 {
            Some((self.co / (self.m2_x.sqrt() * self.m2_y.sqrt())).clamp(-1.0, 1.0))
        } else {
            None
        }
    }
}

/// Arithmetic mean that is exact for constant input and never leaves
/// `[min, max]` of its input. `None` on empty input.
pub fn bounded_mean(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    let mut n = 0usize;
    let mut mean = 0.0;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        n += 1;
        mean += (v - mean) / n as f64;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (n > 0).then(|| mean.clamp(lo, hi))
}

/// Quantile of sorted data, linear interpolation between order statistics
/// at position `p * (n - 1)`.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + frac * (sorted[hi] - sorted[lo])
    }
}

/// Five-number summary plus count, for box-plot glyphs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxStats {
    pub count: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

impl BoxStats {
    pub fn from_values(mut values: Vec<f64>) -> Option<BoxStats> {
        if values.is_empty() {
            return None;
        }
        values.sort_by(f64::total_cmp);
        Some(BoxStats {
            count: values.len(),
            min: values[0],
            q1: quantile_sorted(&values, 0.25),
            median: quantile_sorted(&values, 0.5),
            q3: quantile_sorted(&values, 0.75),
            max: values[values.len() - 1],
        })
    }
}
