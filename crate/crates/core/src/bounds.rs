//! Upper bounds on the degree of a root.

use crate::spec::MulticurveSpec;

/// Largest possible degree of a root for `m` nonseparating curves on a
/// genus-`g` surface, `r` of them preserved.
pub fn bound_nonseparating(g: u64, m: u64, r: u64) -> u64 {
    if g <= m {
        return g;
    }
    let h = g - m;
    let mut bound = 4 * h + 2;
    if r == 1 {
        bound = bound.min(2 * h + 1);
    }
    if r >= 2 {
        bound = bound.min((h + r - 1) / (r - 1));
    }
    bound
}

/// Whether degree `n` survives every nonseparating constraint.
pub fn is_degree_admissible(g: u64, m: u64, r: u64, n: u64) -> bool {
    if n == 0 || n > bound_nonseparating(g, m, r) {
        return false;
    }
    if r >= 1 && n.is_multiple_of(2) {
        return false;
    }
    if g == m && !m.is_multiple_of(n) {
        return false;
    }
    true
}

/// `4 gC² + 2 gC`.
pub fn separating_bound(gc: u64) -> u64 {
    4 * gc * gc + 2 * gc
}

/// `⌊16g²/5 + 12g + 45/4⌋`.
pub fn stable_bound(g: u64) -> u64 {
    (64 * g * g + 240 * g + 225) / 20
}

/// Separating bound of a chain, from its smallest consecutive genus sum.
pub fn bound_separating(spec: &MulticurveSpec) -> Option<u64> {
    spec.g_of_c().map(separating_bound)
}

/// Degree cap used when searching a chain. The consecutive-genus bound is
/// used for chains of at least two pieces; single pieces and chains with
/// a genus-zero joint fall back to the bound for the whole surface.
pub fn search_cap(spec: &MulticurveSpec) -> u64 {
    match spec {
        MulticurveSpec::Nonseparating { g, curves, r, .. } => bound_nonseparating(*g, *curves, *r),
        MulticurveSpec::Chain { nodes, .. } => match spec.g_of_c() {
            Some(gc) if nodes.len() >= 2 && gc >= 1 => separating_bound(gc),
            _ => separating_bound(spec.genus()),
        },
    }
}
