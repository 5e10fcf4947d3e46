//! Closed-form extremal numbers and bounds.
//!
//! Every evaluator returns a [`BoundValue`]: the exact integer, whether the
//! hypotheses of the underlying result hold for these parameters, and which
//! result it comes from. Out-of-window parameters are evaluated anyway so
//! small-case searches can be compared against them.

use serde::Serialize;

use crate::error::{Error, Result};

/// Identifies the result a value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Mantel,
    ErdosGallai,
    AlonFrankl,
    FranklFuredi,
    /// `ex_3(n, {F5, M_{s+1}})` for `n >= 30(s+1)`.
    F5Matching,
    TwoColoredMantel,
    RainbowMantel,
    TwoColoredProduct,
    ErdosKoRado,
    HiltonMilner,
    RainbowMatching,
    GerbnerTompkinsZhou,
    /// The open question whether the `F5`/matching value holds down to
    /// `n >= 3(s+1)`.
    H3Conjecture,
    /// The open 3-graph analogue of the 2-colored Mantel bound.
    ColoredF5Conjecture,
    /// A value read off an explicit construction.
    Construction,
    /// Hypotheses of the disjoint-pair stability bound for 2-colored
    /// triangle-free systems.
    DisjointPairStability,
    /// A literal supplied by the caller.
    Given,
}

impl Source {
    pub fn id(self) -> &'static str {
        match self {
            Source::Mantel => "mantel",
            Source::ErdosGallai => "erdos-gallai",
            Source::AlonFrankl => "alon-frankl",
            Source::FranklFuredi => "frankl-furedi",
            Source::F5Matching => "f5-matching",
            Source::TwoColoredMantel => "two-colored-mantel",
            Source::RainbowMantel => "rainbow-mantel",
            Source::TwoColoredProduct => "two-colored-product",
            Source::ErdosKoRado => "erdos-ko-rado",
            Source::HiltonMilner => "hilton-milner",
            Source::RainbowMatching => "rainbow-matching",
            Source::GerbnerTompkinsZhou => "gerbner-tompkins-zhou",
            Source::H3Conjecture => "h3-conjecture",
            Source::ColoredF5Conjecture => "colored-f5-conjecture",
            Source::Construction => "construction",
            Source::DisjointPairStability => "disjoint-pair-stability",
            Source::Given => "given",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundValue {
    pub value: u128,
    pub valid: bool,
    pub source: Source,
}

impl BoundValue {
    fn new(value: u128, valid: bool, source: Source) -> Self {
        BoundValue { value, valid, source }
    }
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c
}

fn quarter_square(n: u64) -> u128 {
    (n as u128 * n as u128) / 4
}

/// `⌊n²/4⌋`.
pub fn mantel(n: u64) -> BoundValue {
    BoundValue::new(quarter_square(n), true, Source::Mantel)
}

/// `ex_2(n, M_{s+1}) = max{C(2s+1, 2), C(s, 2) + s(n-s)}`, valid for
/// `n >= 2s + 1`.
pub fn erdos_gallai(n: u64, s: u64) -> BoundValue {
    let clique = binomial(2 * s + 1, 2);
    let star = binomial(s, 2) + s as u128 * n.saturating_sub(s) as u128;
    BoundValue::new(clique.max(star), n > 2 * s, Source::ErdosGallai)
}

/// `t_2(n, l)`, the edge count of the balanced complete `l`-partite graph.
pub fn turan_count_2(n: u64, l: u64) -> u128 {
    if l == 0 {
        return 0;
    }
    let (q, r) = ((n / l) as u128, (n % l) as u128);
    let l = l as u128;
    let sum_sq = r * (q + 1) * (q + 1) + (l - r) * q * q;
    (n as u128 * n as u128 - sum_sq) / 2
}

/// `g(n, l, s) = s(n-s) + t_2(s, l-1)`.
pub fn g_count(n: u64, l: u64, s: u64) -> u128 {
    s as u128 * n.saturating_sub(s) as u128 + turan_count_2(s, l.saturating_sub(1))
}

/// `ex_2(n, {K_{l+1}, M_{s+1}}) = max{t_2(2s+1, l), g(n, l, s)}`, valid for
/// `n >= 2s + 1`, `l >= 2`.
pub fn alon_frankl(n: u64, l: u64, s: u64) -> BoundValue {
    let v = turan_count_2(2 * s + 1, l).max(g_count(n, l, s));
    BoundValue::new(v, n > 2 * s && l >= 2, Source::AlonFrankl)
}

/// `⌊n/3⌋⌊(n+1)/3⌋⌊(n+2)/3⌋`; valid as `ex_3(n, F5)` for `n >= 33`.
pub fn frankl_furedi(n: u64) -> BoundValue {
    let v = (n / 3) as u128 * ((n + 1) / 3) as u128 * n.div_ceil(3) as u128;
    BoundValue::new(v, n >= 33, Source::FranklFuredi)
}

/// `|H_3(n, s)| = s⌊(n-s)²/4⌋`.
pub fn h3_count(n: u64, s: u64) -> u128 {
    s as u128 * quarter_square(n.saturating_sub(s))
}

/// `ex_3(n, {F5, M_{s+1}})`: `C(n-1, 2)` for `s = 1, 2` and
/// `s⌊(n-s)²/4⌋` for `s >= 3`, valid for `n >= 30(s+1)`. `s = 0` gives 0
/// and is never valid.
pub fn main_theorem(n: u64, s: u64) -> BoundValue {
    match s {
        0 => BoundValue::new(0, false, Source::F5Matching),
        1 | 2 => BoundValue::new(
            binomial(n.saturating_sub(1), 2),
            n >= 30 * (s + 1),
            Source::F5Matching,
        ),
        _ => BoundValue::new(h3_count(n, s), n >= 30 * (s + 1), Source::F5Matching),
    }
}

/// Conjectured extension of [`main_theorem`] to `n >= 3(s+1)`, `s >= 3`.
pub fn h3_conjecture(n: u64, s: u64) -> BoundValue {
    BoundValue::new(h3_count(n, s), s >= 3 && n >= 3 * (s + 1), Source::H3Conjecture)
}

fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

/// `Σ e(G_i) <= p⌊n²/4⌋` for 2-colored triangle-free systems, `p >= 2`.
pub fn two_colored_mantel(n: u64, p: u64) -> Result<BoundValue> {
    need(p >= 2, || format!("2-colored Mantel needs p >= 2, got {p}"))?;
    Ok(BoundValue::new(
        p as u128 * quarter_square(n),
        true,
        Source::TwoColoredMantel,
    ))
}

/// `Σ e(G_i) <= max{2C(n, 2), p⌊n²/4⌋}` for rainbow triangle-free systems,
/// `p >= 3`.
pub fn rainbow_mantel(n: u64, p: u64) -> Result<BoundValue> {
    need(p >= 3, || format!("rainbow Mantel needs p >= 3, got {p}"))?;
    let v = (2 * binomial(n, 2)).max(p as u128 * quarter_square(n));
    Ok(BoundValue::new(v, true, Source::RainbowMantel))
}

/// `Π e(G_i) <= ⌊n²/4⌋^p` for 2-colored triangle-free systems.
pub fn two_colored_product_bound(n: u64, p: u64) -> Result<BoundValue> {
    need(p >= 2, || format!("product bound needs p >= 2, got {p}"))?;
    let exp = u32::try_from(p).map_err(|_| Error::Range(format!("exponent {p} too large")))?;
    let v = quarter_square(n)
        .checked_pow(exp)
        .ok_or_else(|| Error::Range(format!("⌊{n}²/4⌋^{p} exceeds 128 bits")))?;
    Ok(BoundValue::new(v, true, Source::TwoColoredProduct))
}

/// `C(n-t, k-t)` for `t`-intersecting `k`-uniform families, valid for
/// `n > (t+1)(k-t+1)`.
pub fn ekr_bound(n: u64, k: u64, t: u64) -> Result<BoundValue> {
    need(1 <= t && t <= k && k <= n, || {
        format!("EKR needs 1 <= t <= k <= n, got n = {n}, k = {k}, t = {t}")
    })?;
    Ok(BoundValue::new(
        binomial(n - t, k - t),
        n > (t + 1) * (k - t + 1),
        Source::ErdosKoRado,
    ))
}

/// `C(n-1, k-1) - C(n-k-1, k-1) + 1` for non-trivial intersecting families,
/// valid for `n >= 2k`.
pub fn hilton_milner_bound(n: u64, k: u64) -> Result<BoundValue> {
    need(1 <= k && k <= n, || {
        format!("Hilton-Milner needs 1 <= k <= n, got n = {n}, k = {k}")
    })?;
    let v = binomial(n - 1, k - 1) + 1 - binomial((n - k).saturating_sub(1), k - 1);
    Ok(BoundValue::new(v, n >= 2 * k, Source::HiltonMilner))
}

/// The per-layer edge count each of `s` graphs must exceed to force a
/// rainbow matching: `max{C(2s-1, 2), C(s-1, 2) + (s-1)(n-s+1)}`. Valid
/// for `n > 2s`.
pub fn rainbow_matching_threshold(n: u64, s: u64) -> BoundValue {
    let a = binomial((2 * s).saturating_sub(1), 2);
    let b = binomial(s.saturating_sub(1), 2)
        + s.saturating_sub(1) as u128 * (n + 1).saturating_sub(s) as u128;
    BoundValue::new(a.max(b), n > 2 * s, Source::RainbowMatching)
}

/// `Σ_{1<=i<=t} C(s, i) C(n-s, r-i)` with `t = min{s, r-1}`.
pub fn gtz_tail_sum(n: u64, r: u64, s: u64) -> u128 {
    let t = s.min(r.saturating_sub(1));
    (1..=t)
        .map(|i| binomial(s, i) * binomial(n.saturating_sub(s), r - i))
        .sum()
}

/// Conjectured cap `max{C(n, 3), p⌊n/3⌋⌊(n+1)/3⌋⌊(n+2)/3⌋}` on `Σ|H_i|`
/// for 2-colored F5-free systems; `valid` is `p >= 2`.
pub fn colored_f5_cap(n: u64, p: u64) -> BoundValue {
    let v = binomial(n, 3).max(p as u128 * frankl_furedi(n).value);
    BoundValue::new(v, p >= 2, Source::ColoredF5Conjecture)
}

/// Exact rational `num / den` with `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Ratio {
    num: i128,
    den: i128,
}

impl Ratio {
    const fn new(num: i128, den: i128) -> Self {
        Ratio { num, den }
    }
    fn lt(self, o: Ratio) -> bool {
        self.num * o.den < o.num * self.den
    }
}

/// The stability bound needs `0 < α, β < 1/4`, `β + 2α^{3/4} < 1/4` and
/// `n > 4/(1-4β)`. The middle condition is tested exactly as
/// `16α³ < (1/4 - β)⁴`.
fn disjoint_pair_hypotheses(alpha: Ratio, beta: Ratio, n: u64) -> bool {
    let zero = Ratio::new(0, 1);
    let quarter = Ratio::new(1, 4);
    if !(zero.lt(alpha) && alpha.lt(quarter) && zero.lt(beta) && beta.lt(quarter)) {
        return false;
    }
    // c = 1/4 - β
    let c = Ratio::new(beta.den - 4 * beta.num, 4 * beta.den);
    let lhs = Ratio::new(16 * alpha.num.pow(3), alpha.den.pow(3));
    let rhs = Ratio::new(c.num.pow(4), c.den.pow(4));
    // n > 4 / (1 - 4β) = 4β.den / (β.den - 4β.num)
    let n_ok = (n as i128) * (beta.den - 4 * beta.num) > 4 * beta.den;
    lhs.lt(rhs) && n_ok
}

/// The `(α, β) = (1/20, 1/28)` instantiation used for the `s >= 3`
/// argument.
pub const PUBLISHED_ALPHA_BETA: ((i128, i128), (i128, i128)) = ((1, 20), (1, 28));

/// Whether the disjoint-pair stability hypotheses hold at the published
/// `(α, β) = (1/20, 1/28)` for this `n`.
pub fn published_disjoint_pair_hypotheses(n: u64) -> BoundValue {
    let ((an, ad), (bn, bd)) = PUBLISHED_ALPHA_BETA;
    let ok = disjoint_pair_hypotheses(Ratio::new(an, ad), Ratio::new(bn, bd), n);
    BoundValue::new(u128::from(ok), ok, Source::DisjointPairStability)
}

/// Formula names accepted by [`evaluate`], with their parameter lists.
pub const FORMULAS: &[(&str, &str)] = &[
    ("mantel", "n"),
    ("eg", "n s"),
    ("t2", "n l"),
    ("g", "n l s"),
    ("af", "n l s"),
    ("ff", "n"),
    ("h3", "n s"),
    ("main", "n s"),
    ("conj-h3", "n s"),
    ("2col-mantel", "n p"),
    ("rainbow-mantel", "n p"),
    ("product", "n p"),
    ("ekr", "n k t"),
    ("hm", "n k"),
    ("rainbow-matching", "n s"),
    ("gtz", "n r s"),
    ("conj-2col-f5", "n p"),
    ("disjoint-pair", "n"),
];

fn canonical_name(name: &str) -> &str {
    match name {
        "erdos-gallai" => "eg",
        "alon-frankl" => "af",
        "frankl-furedi" => "ff",
        "main-theorem" => "main",
        "two-colored-mantel" => "2col-mantel",
        "product-bound" => "product",
        "hilton-milner" => "hm",
        "erdos-ko-rado" => "ekr",
        other => other,
    }
}

/// Evaluates a formula by name; see [`FORMULAS`].
pub fn evaluate(name: &str, params: &[u64]) -> Result<BoundValue> {
    let name = canonical_name(name);
    let arity = FORMULAS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, p)| p.split_whitespace().count())
        .ok_or_else(|| Error::InvalidParameter(format!("unknown formula `{name}`")))?;
    if params.len() != arity {
        return Err(Error::InvalidParameter(format!(
            "formula `{name}` takes {arity} parameters, got {}",
            params.len()
        )));
    }
    let p = params;
    Ok(match name {
        "mantel" => mantel(p[0]),
        "eg" => erdos_gallai(p[0], p[1]),
        "t2" => BoundValue::new(turan_count_2(p[0], p[1]), p[1] >= 1, Source::Construction),
        "g" => BoundValue::new(g_count(p[0], p[1], p[2]), p[1] >= 2 && p[2] <= p[0], Source::Construction),
        "af" => alon_frankl(p[0], p[1], p[2]),
        "ff" => frankl_furedi(p[0]),
        "h3" => BoundValue::new(h3_count(p[0], p[1]), p[1] + 2 <= p[0], Source::Construction),
        "main" => main_theorem(p[0], p[1]),
        "conj-h3" => h3_conjecture(p[0], p[1]),
        "2col-mantel" => two_colored_mantel(p[0], p[1])?,
        "rainbow-mantel" => rainbow_mantel(p[0], p[1])?,
        "product" => two_colored_product_bound(p[0], p[1])?,
        "ekr" => ekr_bound(p[0], p[1], p[2])?,
        "hm" => hilton_milner_bound(p[0], p[1])?,
        "rainbow-matching" => rainbow_matching_threshold(p[0], p[1]),
        "gtz" => BoundValue::new(gtz_tail_sum(p[0], p[1], p[2]), p[1] >= 2 && p[0] >= p[2], Source::GerbnerTompkinsZhou),
        "conj-2col-f5" => colored_f5_cap(p[0], p[1]),
        "disjoint-pair" => published_disjoint_pair_hypotheses(p[0]),
        _ => unreachable!("checked against FORMULAS"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erdos_gallai_values() {
        assert_eq!(erdos_gallai(7, 2), BoundValue::new(11, true, Source::ErdosGallai));
        assert_eq!(erdos_gallai(5, 2).value, 10);
        assert!(erdos_gallai(5, 2).valid);
        assert!(!erdos_gallai(4, 2).valid);
    }

    #[test]
    fn turan_and_g_counts() {
        assert_eq!(turan_count_2(5, 2), 6);
        assert_eq!(turan_count_2(9, 3), 27);
        assert_eq!(g_count(7, 2, 2), 10);
        assert_eq!(g_count(8, 3, 3), 17);
    }

    #[test]
    fn alon_frankl_values() {
        assert_eq!(alon_frankl(7, 2, 2).value, 10);
        assert_eq!(alon_frankl(5, 2, 2).value, 6);
        assert!(alon_frankl(5, 2, 2).valid);
        assert!(!alon_frankl(4, 2, 2).valid);
    }

    #[test]
    fn alon_frankl_g_branch_wins_beyond_3s() {
        for l in 2..=6 {
            for s in 0..=10 {
                for n in 3 * s + 1..=200 {
                    let b = alon_frankl(n, l, s);
                    assert!(b.value >= g_count(n, l, s));
                    assert_eq!(b.value, g_count(n, l, s), "n={n} l={l} s={s}");
                }
            }
        }
    }

    #[test]
    fn frankl_furedi_values() {
        assert_eq!(frankl_furedi(33), BoundValue::new(1331, true, Source::FranklFuredi));
        assert_eq!(frankl_furedi(9), BoundValue::new(27, false, Source::FranklFuredi));
        assert_eq!(frankl_furedi(3).value, 1);
        assert!(!frankl_furedi(3).valid);
    }

    #[test]
    fn main_theorem_values() {
        assert_eq!(main_theorem(150, 4), BoundValue::new(21316, true, Source::F5Matching));
        assert_eq!(main_theorem(60, 1), BoundValue::new(1711, true, Source::F5Matching));
        assert_eq!(main_theorem(100, 3), BoundValue::new(7056, false, Source::F5Matching));
        assert_eq!(main_theorem(90, 2).value, binomial(89, 2));
        assert!(main_theorem(90, 2).valid);
        assert_eq!(main_theorem(10, 0), BoundValue::new(0, false, Source::F5Matching));
    }

    #[test]
    fn colored_mantel_values() {
        assert_eq!(two_colored_mantel(4, 2).unwrap().value, 8);
        assert_eq!(two_colored_mantel(5, 2).unwrap().value, 12);
        assert!(two_colored_mantel(5, 1).is_err());
        assert_eq!(rainbow_mantel(5, 3).unwrap().value, 20);
        assert_eq!(rainbow_mantel(4, 9).unwrap().value, 36);
        assert_eq!(rainbow_mantel(6, 3).unwrap().value, 30);
        assert!(rainbow_mantel(6, 2).is_err());
    }

    #[test]
    fn product_bound_values() {
        assert_eq!(two_colored_product_bound(4, 2).unwrap().value, 16);
        assert_eq!(two_colored_product_bound(5, 3).unwrap().value, 216);
        assert_eq!(two_colored_product_bound(2, 2).unwrap().value, 1);
        assert_eq!(two_colored_product_bound(64, 8).unwrap().value, 1024u128.pow(8));
        assert!(matches!(two_colored_product_bound(64, 13), Err(Error::Range(_))));
    }

    #[test]
    fn intersecting_family_bounds() {
        let e = ekr_bound(10, 3, 1).unwrap();
        assert_eq!((e.value, e.valid), (36, true));
        assert_eq!(hilton_milner_bound(10, 3).unwrap().value, 22);
        assert_eq!(ekr_bound(7, 3, 3).unwrap().value, 1);
        assert!(ekr_bound(3, 4, 1).is_err());
        // the triple-system case on n - 1 points collapses to 3n - 11
        for n in 7..60u64 {
            assert_eq!(hilton_milner_bound(n - 1, 3).unwrap().value, (3 * n - 11) as u128);
        }
    }

    #[test]
    fn rainbow_matching_thresholds() {
        assert_eq!(rainbow_matching_threshold(10, 2).value, 9);
        assert_eq!(rainbow_matching_threshold(5, 2).value, 4);
        assert_eq!(rainbow_matching_threshold(7, 3).value, 11);
        assert!(!rainbow_matching_threshold(6, 3).valid);
    }

    #[test]
    fn gtz_sums() {
        assert_eq!(gtz_tail_sum(10, 3, 1), 36);
        assert_eq!(gtz_tail_sum(10, 3, 2), 64);
        assert_eq!(gtz_tail_sum(10, 3, 0), 0);
    }

    #[test]
    fn conjectured_caps() {
        assert_eq!(colored_f5_cap(5, 2).value, 10);
        assert_eq!(colored_f5_cap(4, 2).value, 4);
        assert_eq!(h3_conjecture(12, 3).value, 60);
        assert_eq!(h3_conjecture(13, 3).value, 75);
        assert!(h3_conjecture(12, 3).valid);
        assert!(!h3_conjecture(11, 3).valid);
    }

    #[test]
    fn published_stability_parameters() {
        // 1/28 + 2 (1/20)^{3/4} ≈ 0.247 < 1/4 and 4 / (1 - 4/28) = 14/3
        assert!(!published_disjoint_pair_hypotheses(4).valid);
        assert!(published_disjoint_pair_hypotheses(5).valid);
        // α = 1/16 already breaks the middle condition against β = 1/28
        assert!(!disjoint_pair_hypotheses(Ratio::new(1, 16), Ratio::new(1, 28), 100));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(binomial(64, 32), 1832624140942590534);
    }

    #[test]
    fn evaluate_by_name() {
        assert_eq!(evaluate("ff", &[33]).unwrap().value, 1331);
        assert_eq!(evaluate("erdos-gallai", &[7, 2]).unwrap().value, 11);
        assert!(evaluate("ff", &[1, 2]).is_err());
        assert!(evaluate("nope", &[]).is_err());
        assert!(evaluate("2col-mantel", &[4, 1]).is_err());
    }
}
