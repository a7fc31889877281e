//! Closed-form sides of the product identities and a registry that pairs
//! each one with its enumerative side over a parameter grid.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{qbinom, qfact, qint, MultiPoly, RationalFn};
use crate::error::{Error, Result};
use crate::hermite::{enumerate_hermite, hermite_to_tiling, tiling_to_hermite};
use crate::orders::{all_permutations, alpha, avoids, interval_gf, Order};
use crate::paths::{
    compositions, enumerate_k_dyck, hooks, minimal_labeling, path_to_forest, post_order_word, up_step_height,
    zigzag_path, LatticePath,
};
use crate::stirling::{
    alpha_k, enumerate_stirling, inv_gf, inv_gf_product, is_132_avoiding_stirling, stirling_interval_gf,
    verify_hook_formulas, StirlingPermutation,
};
use crate::symmetric::{
    center_free_gf, enumerate_involutive, enumerate_marked_labelings, enumerate_symmetric_fixed_lower,
    enumerate_symmetric_forests, f_poly, fixed_upper_product, grand_gf, grand_gf_closed, history_gf, labeling_gf,
    marked_labeling_count, matching_gf, symmetric_paths, tiling_gf_fixed_lower, tiling_gf_fixed_upper, SymmetricForest,
};
use crate::tilings::{gf_fixed_lower, gf_fixed_upper, Statistic};

/// `[n]! / ∏ [h_x]` over the forest of a Dyck path.
pub fn hook_product(lower: &LatticePath) -> Result<MultiPoly> {
    let f = path_to_forest(lower);
    let mut out = qfact(f.size() as u64);
    for h in hooks(&f) {
        out = out.div_exact(&qint(h as u64))?;
    }
    Ok(out)
}

/// `∏ [HT(u)]` over the up steps of a k-Dyck path.
pub fn height_product(upper: &LatticePath) -> Result<MultiPoly> {
    let mut out = MultiPoly::one();
    for i in 1..=upper.semilength() {
        out = &out * &qint(up_step_height(upper, i)? as u64);
    }
    Ok(out)
}

/// `∏_{j≥2} [k(n_1+⋯+n_{j-1}) + n_j choose n_j]` for a zigzag composition.
pub fn zigzag_product(composition: &[usize], k: usize) -> MultiPoly {
    let mut out = MultiPoly::one();
    let mut before = composition.first().copied().unwrap_or(0);
    for &nj in composition.iter().skip(1) {
        out = &out * &qbinom((k * before + nj) as u64, nj as i64);
        before += nj;
    }
    out
}

/// One checked instance of an identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCase {
    pub identity: String,
    pub params: Value,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

/// Range flags shared by every identity; unset fields fall back to the
/// identity's own defaults.
#[derive(Clone, Debug, Default)]
pub struct Grid {
    pub max_n: Option<usize>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub comp: Option<Vec<usize>>,
    pub path: Option<String>,
}

impl Grid {
    fn ns(&self, lo: usize, default_max: usize) -> Vec<usize> {
        match self.n {
            Some(n) => vec![n],
            None => (lo..=self.max_n.unwrap_or(default_max)).collect(),
        }
    }

    fn ks(&self, default: &[usize]) -> Vec<usize> {
        self.k.map_or_else(|| default.to_vec(), |k| vec![k])
    }
}

type Cases = fn(&Grid) -> Result<Vec<Value>>;
type Eval = fn(&Value) -> Result<(String, String)>;

/// A registered identity: a parameter grid and a producer for both sides.
pub struct Identity {
    pub id: &'static str,
    pub summary: &'static str,
    cases: Cases,
    eval: Eval,
}

impl Identity {
    pub fn cases(&self, grid: &Grid) -> Result<Vec<Value>> {
        (self.cases)(grid)
    }

    pub fn check(&self, params: &Value) -> Result<IdentityCase> {
        let (lhs, rhs) = (self.eval)(params)?;
        Ok(IdentityCase { identity: self.id.to_string(), params: params.clone(), pass: lhs == rhs, lhs, rhs })
    }
}

fn str_param<'a>(p: &'a Value, key: &str) -> Result<&'a str> {
    p[key].as_str().ok_or_else(|| Error::Parse(format!("missing parameter {key}")))
}

fn usize_param(p: &Value, key: &str) -> Result<usize> {
    p[key].as_u64().map(|v| v as usize).ok_or_else(|| Error::Parse(format!("missing parameter {key}")))
}

fn pair(a: MultiPoly, b: MultiPoly) -> (String, String) {
    (a.to_string(), b.to_string())
}

fn dyck_cases(grid: &Grid, key: &str, default_max: usize, ks: &[usize]) -> Result<Vec<Value>> {
    let mut out = Vec::new();
    for k in grid.ks(ks) {
        if let Some(p) = &grid.path {
            LatticePath::parse_dyck(p, k)?;
            out.push(json!({ key: p, "k": k }));
            continue;
        }
        for n in grid.ns(1, default_max) {
            out.extend(enumerate_k_dyck(n, k).into_iter().map(|p| json!({ key: p.to_string(), "k": k })));
        }
    }
    Ok(out)
}

fn path_param(p: &Value, key: &str) -> Result<LatticePath> {
    LatticePath::parse_dyck(str_param(p, key)?, usize_param(p, "k")?)
}

fn symmetric_forest_cases(grid: &Grid, default_max: usize, keep: fn(&SymmetricForest) -> bool) -> Result<Vec<Value>> {
    let forests = match &grid.path {
        Some(text) => vec![SymmetricForest::parse(text)?],
        None => grid.ns(1, default_max).into_iter().flat_map(enumerate_symmetric_forests).collect(),
    };
    Ok(forests.iter().filter(|f| keep(f)).map(|f| json!({ "forest": f.to_string() })).collect())
}

fn symmetric_path_cases(grid: &Grid, default_max: usize) -> Result<Vec<Value>> {
    if let Some(p) = &grid.path {
        return Ok(vec![json!({ "mu": p, "k": 1 })]);
    }
    Ok(grid
        .ns(1, default_max)
        .into_iter()
        .flat_map(symmetric_paths)
        .map(|p| json!({ "mu": p.to_string(), "k": 1 }))
        .collect())
}

fn forest_param(p: &Value) -> Result<SymmetricForest> {
    SymmetricForest::parse(str_param(p, "forest")?)
}

fn sym_path_param(p: &Value) -> Result<LatticePath> {
    let mu = LatticePath::parse_dyck(str_param(p, "mu")?, 1)?;
    if !crate::symmetric::is_symmetric_path(&mu) {
        return Err(Error::Precondition(format!("{mu} is not symmetric")));
    }
    Ok(mu)
}

static REGISTRY: &[Identity] = &[
    Identity {
        id: "kw-lambda",
        summary: "Σ q^art over tilings above λ equals [n]!/∏[h]",
        cases: |g| dyck_cases(g, "lambda", 5, &[1]),
        eval: |p| {
            let l = path_param(p, "lambda")?;
            Ok(pair(gf_fixed_lower(&l, Statistic::Art)?, hook_product(&l)?))
        },
    },
    Identity {
        id: "kw-mu",
        summary: "Σ q^tiles over tilings below μ equals ∏[HT(u)]",
        cases: |g| dyck_cases(g, "mu", 5, &[1]),
        eval: |p| {
            let m = path_param(p, "mu")?;
            Ok(pair(gf_fixed_upper(&m, Statistic::Tiles)?, height_product(&m)?))
        },
    },
    Identity {
        id: "k-hermite",
        summary: "k-Hermite histories of μ, carried to tilings and back, have GF ∏[HT(u)]",
        cases: |g| dyck_cases(g, "mu", 4, &[2, 3]),
        eval: |p| {
            let m = path_param(p, "mu")?;
            let mut lhs = MultiPoly::zero();
            for h in enumerate_hermite(&m)? {
                let t = hermite_to_tiling(&h);
                if tiling_to_hermite(&t) != h || t.tiles().len() != h.weight() {
                    return Ok((format!("round trip fails at {h}"), height_product(&m)?.to_string()));
                }
                lhs += &MultiPoly::q_pow(t.tiles().len() as u64);
            }
            let direct = gf_fixed_upper(&m, Statistic::Tiles)?;
            if direct != lhs {
                return Ok((format!("histories {lhs} vs tilings {direct}"), height_product(&m)?.to_string()));
            }
            Ok(pair(lhs, height_product(&m)?))
        },
    },
    Identity {
        id: "zigzag",
        summary: "Σ q^art_k over tilings above a zigzag path equals a product of q-binomials",
        cases: |g| {
            let mut out = Vec::new();
            for k in g.ks(&[1, 2, 3]) {
                let comps = match &g.comp {
                    Some(c) => vec![c.clone()],
                    None => g.ns(1, 5).into_iter().flat_map(compositions).collect(),
                };
                out.extend(comps.into_iter().map(|c| json!({ "comp": c, "k": k })));
            }
            Ok(out)
        },
        eval: |p| {
            let k = usize_param(p, "k")?;
            let comp: Vec<usize> =
                serde_json::from_value(p["comp"].clone()).map_err(|e| Error::Parse(e.to_string()))?;
            let lower = zigzag_path(&comp, k);
            Ok(pair(gf_fixed_lower(&lower, Statistic::ArtK)?, zigzag_product(&comp, k)))
        },
    },
    Identity {
        id: "bruhat",
        summary: "Bruhat interval above α⁻¹(μ) has the fixed-upper tiling GF of μ",
        cases: |g| {
            let mut out = Vec::new();
            for n in g.ns(1, 5) {
                for pi in all_permutations(n) {
                    if avoids(&pi, 132)? {
                        out.push(json!({ "sigma": pi.to_string() }));
                    }
                }
            }
            Ok(out)
        },
        eval: |p| {
            let pi: crate::orders::Permutation = str_param(p, "sigma")?.parse()?;
            let mu = alpha(&pi)?;
            Ok(pair(interval_gf(&pi, Order::Bruhat), gf_fixed_upper(&mu, Statistic::Tiles)?))
        },
    },
    Identity {
        id: "weak",
        summary: "left weak interval above post(L_0) has the fixed-lower art GF of λ",
        cases: |g| dyck_cases(g, "lambda", 5, &[1]),
        eval: |p| {
            let l = path_param(p, "lambda")?;
            let pi0 = post_order_word(&minimal_labeling(&path_to_forest(&l)));
            Ok(pair(interval_gf(&pi0, Order::Weak), gf_fixed_lower(&l, Statistic::Art)?))
        },
    },
    Identity {
        id: "stirling-product",
        summary: "Σ q^inv_k over k-Stirling permutations equals [1][k+1][2k+1]⋯",
        cases: |g| {
            let mut out = Vec::new();
            for k in g.ks(&[1, 2, 3]) {
                out.extend(g.ns(1, 4).into_iter().map(|n| json!({ "n": n, "k": k })));
            }
            Ok(out)
        },
        eval: |p| {
            let (n, k) = (usize_param(p, "n")?, usize_param(p, "k")?);
            Ok(pair(inv_gf(n, k), inv_gf_product(n, k)))
        },
    },
    Identity {
        id: "stirling-interval",
        summary: "k-Bruhat interval above a 132-avoiding σ has the fixed-upper GF of α_k(σ)",
        cases: |g| {
            let mut out = Vec::new();
            for k in g.ks(&[1, 2, 3]) {
                for n in g.ns(1, 3) {
                    for s in enumerate_stirling(n, k) {
                        if is_132_avoiding_stirling(&s) {
                            out.push(json!({ "sigma": s.to_string(), "k": k }));
                        }
                    }
                }
            }
            Ok(out)
        },
        eval: |p| {
            let s = StirlingPermutation::parse(str_param(p, "sigma")?, usize_param(p, "k")?)?;
            let mu = alpha_k(&s)?;
            Ok(pair(stirling_interval_gf(&s), gf_fixed_upper(&mu, Statistic::Tiles)?))
        },
    },
    Identity {
        id: "hook-multifactorial",
        summary: "Σ n!/∏h over nesting forests of NC_n^(k) equals ∏(ik+1)",
        cases: |g| {
            let mut out = Vec::new();
            for k in g.ks(&[2, 3]) {
                let max = if k == 2 { 4 } else { 3 };
                out.extend(g.ns(1, max).into_iter().map(|n| json!({ "n": n, "k": k })));
            }
            Ok(out)
        },
        eval: |p| {
            let r = verify_hook_formulas(usize_param(p, "n")?, usize_param(p, "k")?)?;
            Ok((r.hook_sum.to_string(), r.multifactorial.to_string()))
        },
    },
    Identity {
        id: "hook-qdouble",
        summary: "Σ_F [n]_{q²}! ∏ q^{h-1}/[h]_{q²} equals [1][3]⋯[2n-1]",
        cases: |g| Ok(g.ns(1, 5).into_iter().map(|n| json!({ "n": n, "k": 2 })).collect()),
        eval: |p| {
            let r = verify_hook_formulas(usize_param(p, "n")?, 2)?;
            let missing = || Error::Invariant("q-hook sides missing for k = 2".into());
            Ok(pair(r.q_hook_sum.ok_or_else(missing)?, r.q_double_factorial.ok_or_else(missing)?))
        },
    },
    Identity {
        id: "sym-count",
        summary: "symmetric tilings above λ(F) number 2^{n-c} n!/∏h",
        cases: |g| symmetric_forest_cases(g, 5, |_| true),
        eval: |p| {
            let f = forest_param(p)?;
            let tilings = enumerate_symmetric_fixed_lower(&f.path())?.len();
            let labelings = enumerate_marked_labelings(&f).len();
            let lhs = if tilings == labelings {
                tilings.to_string()
            } else {
                format!("{tilings} tilings, {labelings} labelings")
            };
            Ok((lhs, marked_labeling_count(&f).to_string()))
        },
    },
    Identity {
        id: "sym-marks",
        summary: "Σ t^tiles_0 over symmetric tilings above λ(F) equals Σ t^|MARK|",
        cases: |g| symmetric_forest_cases(g, 5, |_| true),
        eval: |p| {
            let f = forest_param(p)?;
            Ok(pair(t_marginal(&tiling_gf_fixed_lower(&f.path())?), t_marginal(&labeling_gf(&f))))
        },
    },
    Identity {
        id: "sym-phi",
        summary: "Σ q^{art_+ + art_0} t^tiles_0 above λ(F) equals Σ q^{|INV| + Σ_MARK (n+1-i)} t^|MARK|",
        cases: |g| symmetric_forest_cases(g, 5, |_| true),
        eval: |p| {
            let f = forest_param(p)?;
            Ok(pair(tiling_gf_fixed_lower(&f.path())?, labeling_gf(&f)))
        },
    },
    Identity {
        id: "sym-center-free",
        summary: "without center vertices, Σ q^{art_+ + art_0} t^tiles_0 equals (1+tq)⋯(1+tq^n)[n]!/∏[h]",
        cases: |g| symmetric_forest_cases(g, 4, |f| f.centers() == 0),
        eval: |p| {
            let f = forest_param(p)?;
            Ok(pair(tiling_gf_fixed_lower(&f.path())?, center_free_gf(&f)?))
        },
    },
    Identity {
        id: "involutive",
        summary: "Σ q^sum t^#positive over involutive sequences of length k equals f_k",
        cases: |g| Ok(g.ns(0, 8).into_iter().map(|n| json!({ "n": n })).collect()),
        eval: |p| {
            let k = usize_param(p, "n")?;
            let lhs: MultiPoly = enumerate_involutive(k)
                .iter()
                .map(|s| {
                    MultiPoly::monomial(
                        1,
                        [s.iter().sum::<usize>() as u64, s.iter().filter(|&&x| x > 0).count() as u64, 0],
                    )
                })
                .sum();
            Ok(pair(lhs, f_poly(k)))
        },
    },
    Identity {
        id: "sym-cor",
        summary: "Σ q^{tiles_+ + tiles_0} t^tiles_0 below symmetric μ equals f_k ∏[HT(u)]",
        cases: |g| symmetric_path_cases(g, 5),
        eval: |p| {
            let mu = sym_path_param(p)?;
            Ok(pair(tiling_gf_fixed_upper(&mu)?, fixed_upper_product(&mu)?))
        },
    },
    Identity {
        id: "sym-history",
        summary: "Σ q^‖H‖ t^pos(H) over symmetric Hermite histories of μ equals f_k ∏[HT(u)]",
        cases: |g| symmetric_path_cases(g, 6),
        eval: |p| {
            let mu = sym_path_param(p)?;
            Ok(pair(history_gf(&mu)?, fixed_upper_product(&mu)?))
        },
    },
    Identity {
        id: "sym-matching",
        summary: "Σ q^cro t^sscr over symmetric matchings of shape μ equals f_k ∏[HT(u)]",
        cases: |g| symmetric_path_cases(g, 6),
        eval: |p| {
            let mu = sym_path_param(p)?;
            Ok(pair(matching_gf(&mu)?, fixed_upper_product(&mu)?))
        },
    },
    Identity {
        id: "sym-grand",
        summary: "Σ q^{tiles_+ + tiles_0} t^tiles_0 s^HT over D_sym(n) equals the closed (q,t,s) sum",
        cases: |g| Ok(g.ns(1, 4).into_iter().map(|n| json!({ "n": n })).collect()),
        eval: |p| {
            let n = usize_param(p, "n")?;
            let lhs = RationalFn::from_poly(grand_gf(n)?);
            let rhs = grand_gf_closed(n)?;
            if lhs == rhs {
                // Same value; print the polynomial form on both sides.
                let text = grand_gf(n)?.to_string();
                return Ok((text.clone(), text));
            }
            Ok((lhs.to_string(), rhs.to_string()))
        },
    },
];

// Collapses q to 1, keeping the t-degree distribution.
fn t_marginal(p: &MultiPoly) -> MultiPoly {
    p.terms().map(|(e, c)| MultiPoly::monomial(c.clone(), [0, e[1], 0])).sum()
}

/// All registered identities, in report order.
pub fn registry() -> &'static [Identity] {
    REGISTRY
}

pub fn lookup(id: &str) -> Option<&'static Identity> {
    REGISTRY.iter().find(|i| i.id == id)
}

/// Identities whose enumerative side is known to disagree with the stated
/// closed form on some cases.
pub const KNOWN_FALSE: &[&str] = &["sym-phi", "sym-center-free"];

/// Runs every case of one identity sequentially.
pub fn run(identity: &Identity, grid: &Grid) -> Result<Vec<IdentityCase>> {
    identity.cases(grid)?.iter().map(|p| identity.check(p)).collect()
}
