use super::{clamp_into, Halt, OptimizerConfig, OptimizerResult, Tracker};
use crate::error::{Error, Result};

/// Absolute tolerance of each line minimization, in step-length units.
const LINE_XTOL: f64 = 1e-5;

/// Powell's conjugate direction-set method with bounded Brent line searches.
///
/// Each sweep minimizes along every direction in turn; the sweep's net
/// displacement then replaces the direction of largest decrease when the
/// usual Powell test allows it. Stops when a sweep lowers the cost by less
/// than `cfg.tolerance` relative to its magnitude.
pub fn powell<F>(mut f: F, x0: &[f64], cfg: &OptimizerConfig) -> Result<OptimizerResult>
where
    F: FnMut(&[f64]) -> f64,
{
    cfg.validate()?;
    if x0.is_empty() {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let mut tracker = Tracker::new(&mut f, cfg.max_evaluations);
    let outcome = run(&mut tracker, x0, cfg);
    tracker.finish(outcome)
}

fn run<F: FnMut(&[f64]) -> f64>(
    t: &mut Tracker<'_, F>,
    x0: &[f64],
    cfg: &OptimizerConfig,
) -> std::result::Result<bool, Halt> {
    let dim = x0.len();
    let mut x = x0.to_vec();
    clamp_into(&mut x, cfg.bounds);
    let mut fval = t.eval(&x)?;
    let mut directions: Vec<Vec<f64>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    loop {
        let sweep_start = x.clone();
        let f_start = fval;
        let mut biggest_drop = 0.0;
        let mut biggest_index = 0;

        for (i, dir) in directions.iter_mut().enumerate() {
            let before = fval;
            let (f_new, x_new, scaled) = line_search(t, &x, fval, dir, cfg.bounds)?;
            fval = f_new;
            x = x_new;
            *dir = scaled;
            if before - fval > biggest_drop {
                biggest_drop = before - fval;
                biggest_index = i;
            }
        }

        let threshold = cfg.tolerance * (f_start.abs() + fval.abs()) + 1e-20;
        if 2.0 * (f_start - fval) <= threshold {
            return Ok(true);
        }

        let displacement: Vec<f64> = x.iter().zip(&sweep_start).map(|(a, b)| a - b).collect();
        let mut extrapolated: Vec<f64> = x.iter().zip(&displacement).map(|(a, d)| a + d).collect();
        clamp_into(&mut extrapolated, cfg.bounds);
        let f_extrapolated = t.eval(&extrapolated)?;

        if f_start > f_extrapolated {
            let mut test = 2.0 * (f_start + f_extrapolated - 2.0 * fval);
            test *= (f_start - fval - biggest_drop).powi(2);
            test -= biggest_drop * (f_start - f_extrapolated).powi(2);
            if test < 0.0 {
                let (f_new, x_new, scaled) = line_search(t, &x, fval, &displacement, cfg.bounds)?;
                fval = f_new;
                x = x_new;
                if scaled.iter().any(|&v| v != 0.0) {
                    directions[biggest_index] = directions[dim - 1].clone();
                    directions[dim - 1] = scaled;
                }
            }
        }
    }
}

/// Minimizes along `x + s * dir` over the step range that keeps the point in
/// bounds. Returns the new cost, the new point and `s * dir`; the current
/// point is kept when the search finds nothing better.
fn line_search<F: FnMut(&[f64]) -> f64>(
    t: &mut Tracker<'_, F>,
    x: &[f64],
    fx: f64,
    dir: &[f64],
    bounds: (f64, f64),
) -> std::result::Result<(f64, Vec<f64>, Vec<f64>), Halt> {
    let unchanged = || (fx, x.to_vec(), vec![0.0; x.len()]);
    let Some((s_lo, s_hi)) = step_range(x, dir, bounds) else {
        return Ok(unchanged());
    };
    if s_hi - s_lo <= LINE_XTOL {
        return Ok(unchanged());
    }
    let at = |s: f64| -> Vec<f64> {
        let mut p: Vec<f64> = x.iter().zip(dir).map(|(a, d)| a + s * d).collect();
        clamp_into(&mut p, bounds);
        p
    };
    let (s, fs) = brent_bounded(|s| t.eval(&at(s)), s_lo, s_hi, LINE_XTOL)?;
    if fs < fx {
        Ok((fs, at(s), dir.iter().map(|d| s * d).collect()))
    } else {
        Ok(unchanged())
    }
}

/// Interval of `s` with `x + s * dir` inside the box.
fn step_range(x: &[f64], dir: &[f64], (lo, hi): (f64, f64)) -> Option<(f64, f64)> {
    let mut s_lo = f64::NEG_INFINITY;
    let mut s_hi = f64::INFINITY;
    for (&xi, &di) in x.iter().zip(dir) {
        if di == 0.0 {
            continue;
        }
        let (a, b) = ((lo - xi) / di, (hi - xi) / di);
        s_lo = s_lo.max(a.min(b));
        s_hi = s_hi.min(a.max(b));
    }
    (s_lo.is_finite() && s_hi.is_finite() && s_lo <= s_hi).then_some((s_lo, s_hi))
}

/// Brent's bounded scalar minimization (golden section with parabolic steps).
fn brent_bounded<G>(mut g: G, mut a: f64, mut b: f64, xatol: f64) -> std::result::Result<(f64, f64), Halt>
where
    G: FnMut(f64) -> std::result::Result<f64, Halt>,
{
    const GOLDEN: f64 = 0.381_966_011_250_105_1; // (3 - sqrt 5) / 2
    let sqrt_eps = f64::EPSILON.sqrt();

    let mut fulc = a + GOLDEN * (b - a);
    let mut nfc = fulc;
    let mut xf = fulc;
    let mut rat: f64 = 0.0;
    let mut e: f64 = 0.0;
    let mut fx = g(xf)?;
    let mut ffulc = fx;
    let mut fnfc = fx;
    let mut xm = 0.5 * (a + b);
    let mut tol1 = sqrt_eps * xf.abs() + xatol / 3.0;
    let mut tol2 = 2.0 * tol1;

    while (xf - xm).abs() > tol2 - 0.5 * (b - a) {
        let mut golden = true;
        if e.abs() > tol1 {
            golden = false;
            let mut r = (xf - nfc) * (fx - ffulc);
            let mut q = (xf - fulc) * (fx - fnfc);
            let mut p = (xf - fulc) * q - (xf - nfc) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            r = e;
            e = rat;
            if p.abs() < (0.5 * q * r).abs() && p > q * (a - xf) && p < q * (b - xf) {
                rat = p / q;
                let x = xf + rat;
                if x - a < tol2 || b - x < tol2 {
                    rat = tol1 * sign_or_one(xm - xf);
                }
            } else {
                golden = true;
            }
        }
        if golden {
            e = if xf >= xm { a - xf } else { b - xf };
            rat = GOLDEN * e;
        }
        let x = xf + sign_or_one(rat) * rat.abs().max(tol1);
        let fu = g(x)?;

        if fu <= fx {
            if x >= xf {
                a = xf;
            } else {
                b = xf;
            }
            fulc = nfc;
            ffulc = fnfc;
            nfc = xf;
            fnfc = fx;
            xf = x;
            fx = fu;
        } else {
            if x < xf {
                a = x;
            } else {
                b = x;
            }
            if fu <= fnfc || nfc == xf {
                fulc = nfc;
                ffulc = fnfc;
                nfc = x;
                fnfc = fu;
            } else if fu <= ffulc || fulc == xf || fulc == nfc {
                fulc = x;
                ffulc = fu;
            }
        }
        xm = 0.5 * (a + b);
        tol1 = sqrt_eps * xf.abs() + xatol / 3.0;
        tol2 = 2.0 * tol1;
    }
    Ok((xf, fx))
}

fn sign_or_one(v: f64) -> f64 {
    if v < 0.0 {
        -1.0
    } else {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn separable_quadratic() {
        let c = [1.0, 2.5, 4.0, 0.3];
        let f = |x: &[f64]| x.iter().zip(&c).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
        let cfg = OptimizerConfig { tolerance: 1e-12, ..Default::default() };
        let r = powell(f, &[3.0; 4], &cfg).unwrap();
        for (got, want) in r.best_params.iter().zip(&c) {
            assert!((got - want).abs() < 1e-4, "{:?}", r.best_params);
        }
    }

    #[test]
    fn cosine_minimum_at_pi() {
        let r = powell(|x| x[0].cos(), &[1.0], &OptimizerConfig::default()).unwrap();
        assert!((r.best_params[0] - PI).abs() < 1e-3, "{:?}", r.best_params);
    }

    #[test]
    fn respects_budget() {
        let cfg = OptimizerConfig { max_evaluations: 10, ..Default::default() };
        let r = powell(|x| x.iter().map(|v| (v - 1.0).powi(2)).sum(), &[4.0, 4.0], &cfg).unwrap();
        assert!(r.evaluations <= 10);
        assert!(!r.converged);
    }

    #[test]
    fn brent_finds_parabola_vertex() {
        let mut calls = 0;
        let (x, fx) = brent_bounded(
            |s| {
                calls += 1;
                Ok((s - 0.7) * (s - 0.7) + 2.0)
            },
            -3.0,
            5.0,
            1e-8,
        )
        .unwrap();
        assert!((x - 0.7).abs() < 1e-6);
        assert!((fx - 2.0).abs() < 1e-12);
        assert!(calls < 30);
    }

    #[test]
    fn step_range_box() {
        assert_eq!(step_range(&[1.0, 1.0], &[1.0, 0.0], (0.0, 4.0)), Some((-1.0, 3.0)));
        assert_eq!(step_range(&[1.0, 3.0], &[1.0, -1.0], (0.0, 4.0)), Some((-1.0, 3.0)));
        assert_eq!(step_range(&[1.0], &[0.0], (0.0, 4.0)), None);
    }
}
