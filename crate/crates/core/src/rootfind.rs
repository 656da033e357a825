//! Bracketing root finders for scalar transcendental functions.
//!
//! Scans never let a bracket span a non-finite sample, re-scan every sign
//! change on a ten times finer grid, and drop sign changes whose endpoint
//! magnitudes keep growing under halving (poles, as in `tan`).

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real};

/// Iteration cap for [`refine`].
pub const MAX_REFINE_ITERATIONS: usize = 200;

/// Number of halvings used by the pole guard.
const POLE_HALVINGS: usize = 4;

/// Default ceiling of [`smallest_root`], in units of the scan step.
pub const DEFAULT_CEILING_STEPS: f64 = 1e5;

/// An interval with finite endpoint values of strictly opposite sign.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Bracket<T> {
    pub lo: T,
    pub hi: T,
    pub f_lo: T,
    pub f_hi: T,
}

impl<T: Real> Bracket<T> {
    /// Evaluates `f` at both ends and validates the sign change.
    pub fn new<F: Fn(T) -> T>(f: F, lo: T, hi: T) -> Result<Self> {
        Self::from_values(lo, hi, f(lo), f(hi))
    }

    pub fn from_values(lo: T, hi: T, f_lo: T, f_hi: T) -> Result<Self> {
        let valid = lo < hi && f_lo.is_finite() && f_hi.is_finite() && f_lo * f_hi < T::zero();
        if valid {
            Ok(Self { lo, hi, f_lo, f_hi })
        } else {
            Err(Error::InvalidBracket {
                lo: to_f64(lo),
                hi: to_f64(hi),
            })
        }
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn contains(&self, x: T) -> bool {
        x >= self.lo && x <= self.hi
    }
}

/// A refined root with the final enclosing interval.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct RootResult<T> {
    pub root: T,
    pub residual: T,
    pub iterations: usize,
    pub bracket: Bracket<T>,
}

/// Raw sign changes on the grid `lo, lo + step, ..., hi`.
fn grid_sign_changes<T: Real, F: Fn(T) -> T>(f: &F, lo: T, hi: T, step: T) -> Vec<Bracket<T>> {
    let cells = to_f64((hi - lo) / step).ceil().max(1.0) as usize;
    let mut out = Vec::new();
    let mut prev: Option<(T, T)> = None;
    for i in 0..=cells {
        let x = if i == cells { hi } else { lo + from_usize::<T>(i) * step };
        let fx = f(x);
        if !fx.is_finite() {
            prev = None;
            continue;
        }
        if fx == T::zero() {
            // An exact zero carries no sign; the neighbours decide.
            continue;
        }
        if let Some((xp, fp)) = prev {
            if fp * fx < T::zero() {
                out.push(Bracket {
                    lo: xp,
                    hi: x,
                    f_lo: fp,
                    f_hi: fx,
                });
            }
        }
        prev = Some((x, fx));
    }
    out
}

/// True when the sign change in `b` behaves like a pole: the smaller endpoint
/// magnitude grows strictly under each of four successive halvings.
fn looks_like_pole<T: Real, F: Fn(T) -> T>(f: &F, b: &Bracket<T>) -> bool {
    let mut cur = *b;
    let mut smallest = cur.f_lo.abs().min(cur.f_hi.abs());
    for _ in 0..POLE_HALVINGS {
        let mid = (cur.lo + cur.hi) / lit(2.0);
        let fm = f(mid);
        if !fm.is_finite() {
            return true;
        }
        if fm == T::zero() {
            return false;
        }
        cur = if cur.f_lo * fm < T::zero() {
            Bracket {
                hi: mid,
                f_hi: fm,
                ..cur
            }
        } else {
            Bracket {
                lo: mid,
                f_lo: fm,
                ..cur
            }
        };
        let next = cur.f_lo.abs().min(cur.f_hi.abs());
        if next <= smallest {
            return false;
        }
        smallest = next;
    }
    true
}

/// Every sign change of `f` detected on the grid `{lo, lo + step, ..., hi}`.
///
/// Non-finite samples are opaque: no bracket spans them. Each coarse bracket
/// is re-scanned at `step / 10` and split if it holds several crossings, and
/// crossings rejected by the pole guard are dropped.
pub fn scan_brackets<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T, step: T) -> Vec<Bracket<T>> {
    if !(lo < hi) || !(step > T::zero()) {
        return Vec::new();
    }
    let fine_step = step / lit(10.0);
    grid_sign_changes(&f, lo, hi, step)
        .into_iter()
        .flat_map(|coarse| grid_sign_changes(&f, coarse.lo, coarse.hi, fine_step))
        .filter(|b| !looks_like_pole(&f, b))
        .collect()
}

/// Brent's method restricted to `b`; returns once the enclosing interval is
/// no wider than `xtol` (or a few ulps of the root, whichever is larger).
pub fn refine<T: Real, F: Fn(T) -> T>(f: F, b: Bracket<T>, xtol: T) -> Result<RootResult<T>> {
    let b = Bracket::from_values(b.lo, b.hi, b.f_lo, b.f_hi)?;
    let eps = T::epsilon();
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);

    let (mut a, mut fa) = (b.lo, b.f_lo);
    let (mut bb, mut fb) = (b.hi, b.f_hi);
    let (mut c, mut fc) = (bb, fb);
    let mut d = bb - a;
    let mut e = d;

    for iteration in 1..=MAX_REFINE_ITERATIONS {
        if (fb > T::zero()) == (fc > T::zero()) {
            c = a;
            fc = fa;
            d = bb - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = bb;
            bb = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = (half * xtol).max(two * eps * bb.abs());
        let xm = half * (c - bb);
        if xm.abs() <= tol || fb == T::zero() {
            let (lo, hi, f_lo, f_hi) = if fb == T::zero() {
                (bb, bb, fb, fb)
            } else if bb <= c {
                (bb, c, fb, fc)
            } else {
                (c, bb, fc, fb)
            };
            return Ok(RootResult {
                root: bb,
                residual: fb,
                iterations: iteration,
                bracket: Bracket { lo, hi, f_lo, f_hi },
            });
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation, or secant when only two points differ.
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * xm * s;
                q = T::one() - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (two * xm * qa * (qa - r) - (bb - a) * (r - T::one()));
                q = (qa - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            }
            p = p.abs();
            let min1 = lit::<T>(3.0) * xm * q - (tol * q).abs();
            let min2 = (e * q).abs();
            if two * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = bb;
        fa = fb;
        bb = if d.abs() > tol {
            bb + d
        } else if xm > T::zero() {
            bb + tol
        } else {
            bb - tol
        };
        fb = f(bb);
        if !fb.is_finite() {
            return Err(Error::InvalidBracket {
                lo: to_f64(b.lo),
                hi: to_f64(b.hi),
            });
        }
    }
    Err(Error::NoConvergence {
        what: "refine",
        iterations: MAX_REFINE_ITERATIONS,
    })
}

/// Smallest root at or above `lo`, scanning with an upper limit that doubles
/// until a bracket appears or `lo + DEFAULT_CEILING_STEPS * step` is reached.
pub fn smallest_root<T: Real, F: Fn(T) -> T>(f: F, lo: T, step: T, xtol: T) -> Result<RootResult<T>> {
    let ceiling = lo + lit::<T>(DEFAULT_CEILING_STEPS) * step;
    smallest_root_below(f, lo, step, xtol, ceiling)
}

/// [`smallest_root`] with an explicit ceiling.
pub fn smallest_root_below<T: Real, F: Fn(T) -> T>(f: F, lo: T, step: T, xtol: T, ceiling: T) -> Result<RootResult<T>> {
    let not_found = || Error::NoRootBelow {
        lo: to_f64(lo),
        ceiling: to_f64(ceiling),
    };
    if !(step > T::zero()) || !(ceiling > lo) {
        return Err(not_found());
    }
    let mut window = lit::<T>(32.0) * step;
    let mut seg_lo = lo;
    loop {
        let seg_hi = (seg_lo + window).min(ceiling);
        if let Some(first) = scan_brackets(&f, seg_lo, seg_hi, step).into_iter().next() {
            return refine(&f, first, xtol);
        }
        if seg_hi >= ceiling {
            return Err(not_found());
        }
        seg_lo = seg_hi;
        window *= lit(2.0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn bracket_validation() {
        assert!(Bracket::new(|x: f64| x, -1.0, 1.0).is_ok());
        assert!(Bracket::new(|x: f64| x * x + 1.0, -1.0, 1.0).is_err());
        assert!(Bracket::new(|x: f64| x, 1.0, -1.0).is_err());
        assert!(Bracket::new(|_x: f64| f64::NAN, -1.0, 1.0).is_err());
    }

    #[test]
    fn sqrt_two_single_bracket() {
        let brackets = scan_brackets(|x: f64| x * x - 2.0, 0.0, 2.0, 0.5);
        assert_eq!(brackets.len(), 1);
        assert!(brackets[0].contains(2f64.sqrt()));
    }

    #[test]
    fn tan_poles_are_not_roots() {
        let brackets = scan_brackets(|x: f64| x.tan(), 0.3, 6.0, 0.25);
        assert_eq!(brackets.len(), 1, "{brackets:?}");
        assert!(brackets[0].contains(PI));
    }

    #[test]
    fn non_finite_samples_split_the_scan() {
        // Sign flips across a NaN hole at x = 1 must not be reported.
        let f = |x: f64| if (x - 1.0).abs() < 0.3 { f64::NAN } else { x - 1.0 };
        assert!(scan_brackets(f, 0.0, 2.0, 0.25).is_empty());
    }

    #[test]
    fn close_roots_split_on_fine_grid() {
        let f = |x: f64| (x - 1.0) * (x - 1.04) * (x - 3.0);
        let brackets = scan_brackets(f, 0.0, 2.0, 0.5);
        // The pair near 1 nets no sign change on the coarse grid.
        assert!(brackets.is_empty());
        let g = |x: f64| (x - 1.005) * (x - 1.045) * (x - 1.085);
        let brackets = scan_brackets(g, 0.9, 1.2, 0.3);
        assert_eq!(brackets.len(), 3, "{brackets:?}");
    }

    #[test]
    fn refine_sqrt_two() {
        let b = Bracket::new(|x: f64| x * x - 2.0, 1.0, 2.0).unwrap();
        let r = refine(|x: f64| x * x - 2.0, b, 1e-12).unwrap();
        assert!((r.root - std::f64::consts::SQRT_2).abs() < 1e-10);
        assert!(r.bracket.width() <= 1e-12);
        assert!(r.bracket.f_lo * r.bracket.f_hi <= 0.0);
    }

    #[test]
    fn refine_sine_gives_pi() {
        let b = Bracket::new(f64::sin, 3.0, 4.0).unwrap();
        let r = refine(f64::sin, b, 1e-12).unwrap();
        assert!((r.root - PI).abs() < 1e-12);
    }

    #[test]
    fn smallest_root_expands_window() {
        let r = smallest_root(|x: f64| x - 100.0, 0.0, 0.1, 1e-12).unwrap();
        assert!((r.root - 100.0).abs() < 1e-10);
        let err = smallest_root_below(|x: f64| x * x + 1.0, 0.0, 0.5, 1e-12, 10.0).unwrap_err();
        assert!(matches!(err, Error::NoRootBelow { .. }));
    }
}
