//! Gauss–Legendre rules and an adaptive bisection integrator.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ordered by node.
#[derive(Debug, Clone)]
pub struct GlRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GlRule {
    pub fn new(n: usize) -> Self {
        let n = NonZeroUsize::new(n).expect("rule needs at least one node");
        let mut pairs: Vec<(f64, f64)> = GaussLegendre::new(n).as_node_weight_pairs().to_vec();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        GlRule {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, half * w))
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// Adaptive integration of a piecewise-smooth function over consecutive
/// panels `[breaks[i], breaks[i+1]]`.
///
/// Each panel compares an 8- and a 16-point rule and is bisected until the
/// difference is below `rel_tol` times the panel value or below its share of
/// `rel_tol·|I|`. Features narrower than the initial panels must be isolated
/// by the caller's breakpoints. Panels are summed left to right.
pub fn adaptive(f: &impl Fn(f64) -> f64, breaks: &[f64], rel_tol: f64, what: &str) -> Result<f64> {
    const MAX_DEPTH: u32 = 48;
    let lo = GlRule::new(8);
    let hi = GlRule::new(16);
    if breaks.len() < 2 {
        return Ok(0.0);
    }
    let (a, b) = (breaks[0], breaks[breaks.len() - 1]);
    if a == b {
        return Ok(0.0);
    }

    struct Ctx<'a, F> {
        f: &'a F,
        lo: &'a GlRule,
        hi: &'a GlRule,
        rel_tol: f64,
        abs_density: f64,
        worst: f64,
        failed: bool,
    }

    fn recurse<F: Fn(f64) -> f64>(ctx: &mut Ctx<'_, F>, a: f64, b: f64, depth: u32) -> f64 {
        let coarse = ctx.lo.integrate(a, b, ctx.f);
        let fine = ctx.hi.integrate(a, b, ctx.f);
        let err = (fine - coarse).abs();
        let budget = (ctx.rel_tol * fine.abs()).max(ctx.abs_density * (b - a).abs());
        if err <= budget || !err.is_finite() {
            if !err.is_finite() {
                ctx.failed = true;
            }
            return fine;
        }
        if depth >= MAX_DEPTH {
            ctx.failed = true;
            ctx.worst = ctx.worst.max(err);
            return fine;
        }
        let mid = 0.5 * (a + b);
        recurse(ctx, a, mid, depth + 1) + recurse(ctx, mid, b, depth + 1)
    }

    // a rough pass fixes the absolute budget for the accurate pass
    let mut ctx = Ctx {
        f,
        lo: &lo,
        hi: &hi,
        rel_tol: rel_tol.max(1e-6),
        abs_density: 0.0,
        worst: 0.0,
        failed: false,
    };
    let rough: f64 = breaks
        .windows(2)
        .map(|w| recurse(&mut ctx, w[0], w[1], 0))
        .sum();
    ctx.rel_tol = rel_tol;
    ctx.abs_density = rel_tol * rough.abs() / (b - a).abs();
    ctx.failed = false;
    let value: f64 = breaks
        .windows(2)
        .map(|w| recurse(&mut ctx, w[0], w[1], 0))
        .sum();
    if ctx.failed || !value.is_finite() {
        return Err(Error::Accuracy {
            what: what.to_string(),
            estimate: ctx.worst / value.abs().max(f64::MIN_POSITIVE),
        });
    }
    Ok(value)
}

/// Breakpoints on `[lo, hi]` graded geometrically (ratio 2) toward each
/// of `centers`, down to spacing `finest`.
pub fn graded_breaks(lo: f64, hi: f64, centers: &[f64], finest: f64) -> Vec<f64> {
    let mut pts = vec![lo, hi];
    for &c in centers {
        if c < lo || c > hi {
            continue;
        }
        pts.push(c);
        let mut d = finest;
        while d < hi - lo {
            for p in [c - d, c + d] {
                if p > lo && p < hi {
                    pts.push(p);
                }
            }
            d *= 2.0;
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * (1.0 + b.abs()));
    pts
}
