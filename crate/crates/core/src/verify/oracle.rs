//! Reference values computed without the closed-form CDF.

use crate::dist::{mn_params, pdf_g};
use crate::error::{Error, Result};

/// `P(p + A |C p - x| <= u)` by integrating over the multiplier `C`.
///
/// With `W(C) = |C p - x|` and `y = u - p >= 0`, conditioning on `C` gives
/// `G(u) = 1 - (1/2) int_0^2 (a - y/W)^+ / (2a) dC`. `W` is linear on at most
/// two pieces, and on each piece the integral of `a - y/W` has the exact
/// antiderivative `a C - (y / W') ln W`.
pub fn region_cdf(a: f64, p: f64, x: f64, u: f64) -> Result<f64> {
    if a <= 0.0 {
        return Err(Error::arg("a", "must be positive"));
    }
    if !(p >= 0.0 && x >= p && u >= p) {
        return Err(Error::arg("u", "region oracle needs p >= 0, x >= p, u >= p"));
    }
    let y = u - p;
    if y == 0.0 {
        return Ok(0.5);
    }
    let level = y / a;
    let w = |c: f64| (c * p - x).abs();
    let mut knots = vec![0.0];
    if p > 0.0 && x / p < 2.0 {
        knots.push(x / p);
    }
    knots.push(2.0);

    let mut excess = 0.0;
    for pair in knots.windows(2) {
        let (c0, c1) = (pair[0], pair[1]);
        let (w0, w1) = (w(c0), w(c1));
        let slope = (w1 - w0) / (c1 - c0);
        // sub-interval where W > level
        let (s, e) = if slope == 0.0 {
            if w0 > level { (c0, c1) } else { continue }
        } else {
            let cross = c0 + (level - w0) / slope;
            match (w0 > level, w1 > level) {
                (true, true) => (c0, c1),
                (false, false) => continue,
                (true, false) => (c0, cross.clamp(c0, c1)),
                (false, true) => (cross.clamp(c0, c1), c1),
            }
        };
        if e <= s {
            continue;
        }
        excess += if slope == 0.0 {
            (e - s) * (a - y / w0)
        } else {
            a * (e - s) - y / slope * (w(e) / w(s)).ln()
        };
    }
    Ok(1.0 - excess / (4.0 * a))
}

/// Adaptive Gauss-Kronrod (7, 15) quadrature to absolute tolerance `tol`.
pub fn integrate(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> f64 {
    fn gk(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
        const XK: [f64; 8] = [
            0.991455371120812639206854697526329,
            0.949107912342758524526189684047851,
            0.864864423359769072789712788640926,
            0.741531185599394439863864773280788,
            0.586087235467691130294144845693013,
            0.405845151377397166906606412076961,
            0.207784955007898467600689403773245,
            0.000000000000000000000000000000000,
        ];
        const WK: [f64; 8] = [
            0.022935322010529224963732008058970,
            0.063092092629978553290700663189204,
            0.104790010322250183839876322541518,
            0.140653259715525918745189590510238,
            0.169004726639267902826583426598550,
            0.190350578064785409913256402421014,
            0.204432940075298892414161999234649,
            0.209482141084727828012999174891714,
        ];
        const WG: [f64; 4] = [
            0.129484966168869693270611432679082,
            0.279705391489276667901467771423780,
            0.381830050505118944950369775488975,
            0.417959183673469387755102040816327,
        ];
        let c = 0.5 * (lo + hi);
        let h = 0.5 * (hi - lo);
        let fc = f(c);
        let mut kron = WK[7] * fc;
        let mut gauss = WG[3] * fc;
        for i in 0..7 {
            let pair = f(c - h * XK[i]) + f(c + h * XK[i]);
            kron += WK[i] * pair;
            if i % 2 == 1 {
                gauss += WG[i / 2] * pair;
            }
        }
        (kron * h, ((kron - gauss) * h).abs())
    }
    fn rec(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: f64, depth: u32) -> f64 {
        let (v, err) = gk(f, lo, hi);
        if err <= tol || depth == 0 {
            return v;
        }
        let mid = 0.5 * (lo + hi);
        rec(f, lo, mid, 0.5 * tol, depth - 1) + rec(f, mid, hi, 0.5 * tol, depth - 1)
    }
    if hi <= lo {
        return 0.0;
    }
    rec(f, lo, hi, tol, 60)
}

/// `G(u)` as the quadrature of the density from the left end of its support,
/// split at the density's kinks and pole.
pub fn quadrature_cdf(a: f64, p: f64, x: f64, u: f64, tol: f64) -> Result<f64> {
    let sp = mn_params(a, p, x)?;
    if sp.is_degenerate() {
        return Err(Error::Degenerate("point mass has no density".to_string()));
    }
    let (lo, hi) = (p - sp.n, p + sp.n);
    if u <= lo {
        return Ok(0.0);
    }
    if u >= hi {
        return Ok(1.0);
    }
    let mut cuts = vec![lo, p - sp.m.abs(), p, p + sp.m.abs(), u];
    cuts.retain(|&c| c >= lo && c <= u);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    // nodes can round onto the pole itself once intervals get tiny
    let f = |s: f64| pdf_g(s, &sp).ok().filter(|v| v.is_finite()).unwrap_or(0.0);
    let pieces = cuts.len().max(2) - 1;
    Ok(cuts
        .windows(2)
        .map(|w| integrate(&f, w[0], w[1], tol / pieces as f64))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrature_of_polynomials() {
        let v = integrate(&|s| s * s * s - 2.0 * s, -1.0, 3.0, 1e-14);
        assert!((v - 12.0).abs() < 1e-12);
    }

    #[test]
    fn quadrature_of_log_pole() {
        let v = integrate(&|s: f64| -s.ln(), 0.0, 1.0, 1e-12);
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn region_cdf_ends() {
        assert_eq!(region_cdf(2.0, 1.0, 3.0, 1.0).unwrap(), 0.5);
        // n = a (|x - p| + |p|) = 6
        assert!((region_cdf(2.0, 1.0, 3.0, 7.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(region_cdf(2.0, 1.0, 0.5, 2.0).is_err());
    }

    #[test]
    fn region_cdf_for_zero_leader_is_uniform() {
        // p = 0: W = x, so u is uniform on (-a x, a x)
        let g = region_cdf(1.0, 0.0, 2.0, 1.0).unwrap();
        assert!((g - 0.75).abs() < 1e-15);
    }
}
