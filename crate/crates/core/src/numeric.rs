//! Small numeric helpers shared by the solvers.

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut carry = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// `|a - b| <= rel * max(1, |reference|)`.
pub fn close_rel(a: f64, b: f64, rel: f64, reference: f64) -> bool {
    (a - b).abs() <= rel * reference.abs().max(1.0)
}

/// Golden-section search for the maximum of a unimodal function on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `width`; returns the best probed
/// abscissa and its value. Endpoints are not evaluated.
pub fn golden_section_max<F>(f: F, lo: f64, hi: f64, width: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    // 1/phi
    const INV_PHI: f64 = 0.618_033_988_749_894_9;

    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);

    while b - a > width {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        // bracket collapsed below float resolution
        if c >= d {
            break;
        }
    }

    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
