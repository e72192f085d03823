//! Character-value criteria excluding Frobenius subgroups `C_p x| C_q` from
//! the unit group of `ZG`, the PSL(2,q) character slices they consume, and a
//! driver replaying the N-prime graph comparison for `PSL(2, r^f)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::construct::{self, GroupSpec};
use crate::cyclo::{
    gauss_sum, rational_independence, subfield_codegree, CyclotomicNumber, GaloisAction,
};
use crate::error::{Error, Result};
use crate::graphs::{nprime_graph, DirectedPrimeGraph};
use crate::numtheory::{
    is_prime, legendre, multiplicative_order, prime_divisors, smallest_with_order,
};
use crate::perm::{PermGroup, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SliceKind {
    Theta1,
    Chi1,
    Eta1,
    PsiExt,
}

impl fmt::Display for SliceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SliceKind::Theta1 => "theta1",
            SliceKind::Chi1 => "chi1",
            SliceKind::Eta1 => "eta1",
            SliceKind::PsiExt => "psi_ext",
        })
    }
}

impl std::str::FromStr for SliceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theta1" => Ok(SliceKind::Theta1),
            "chi1" => Ok(SliceKind::Chi1),
            "eta1" => Ok(SliceKind::Eta1),
            "psi_ext" => Ok(SliceKind::PsiExt),
            _ => Err(Error::param(format!("unknown slice kind `{s}`"))),
        }
    }
}

/// Values of a class function on the classes of elements of order `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSlice")]
pub struct CharacterSlice {
    pub p: u64,
    #[serde(rename = "classes")]
    pub class_labels: Vec<String>,
    pub values: Vec<CyclotomicNumber>,
    /// Caller's assertion that the function is an `F`-combination of irreducible characters.
    #[serde(rename = "isFCombination")]
    pub is_f_combination: bool,
    pub provenance: String,
    /// For slices built from a formula: the exponents `t` (mod `p`) with `x^t`
    /// in each class, for a fixed element `x` of order `p`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residues: Option<Vec<Vec<u64>>>,
}

#[derive(Deserialize)]
struct RawSlice {
    p: u64,
    classes: Vec<String>,
    values: Vec<CyclotomicNumber>,
    #[serde(rename = "isFCombination")]
    is_f_combination: bool,
    #[serde(default)]
    provenance: String,
    #[serde(default)]
    residues: Option<Vec<Vec<u64>>>,
}

impl TryFrom<RawSlice> for CharacterSlice {
    type Error = Error;
    fn try_from(r: RawSlice) -> Result<Self> {
        let mut s =
            CharacterSlice::new(r.p, r.classes, r.values, r.is_f_combination, r.provenance)?;
        s.residues = r.residues;
        Ok(s)
    }
}

impl CharacterSlice {
    /// Values with a conductor dividing `p` are embedded into `Q(zeta_p)`.
    pub fn new(
        p: u64,
        class_labels: Vec<String>,
        values: Vec<CyclotomicNumber>,
        is_f_combination: bool,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::param(format!("slice conductor {p} is not prime")));
        }
        if class_labels.is_empty() || class_labels.len() != values.len() {
            return Err(Error::param(format!(
                "slice needs one value per class and at least one class, got {} labels and {} values",
                class_labels.len(),
                values.len()
            )));
        }
        let values = values
            .into_iter()
            .map(|v| v.embed(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterSlice {
            p,
            class_labels,
            values,
            is_f_combination,
            provenance: provenance.into(),
            residues: None,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn codegrees(&self) -> Result<Vec<u64>> {
        self.values.iter().map(subfield_codegree).collect()
    }
}

fn odd_primes_of(n: u64) -> Vec<u64> {
    prime_divisors(n as u128)
        .into_iter()
        .filter(|&p| p != 2)
        .collect()
}

/// Odd prime divisors of `q - 1` and of `q + 1`.
pub fn pi_minus_plus(q: u64) -> (Vec<u64>, Vec<u64>) {
    (odd_primes_of(q - 1), odd_primes_of(q + 1))
}

fn trace_value(p: u64, k: u64, sign: i64) -> CyclotomicNumber {
    CyclotomicNumber::zeta_trace(p, k as i64)
        .scale(&num_rational::BigRational::from_integer(sign.into()))
}

/// Values of a distinguished character of `PSL(2, r^f)` on its classes of
/// elements of order `p`.
///
/// * `theta1`: `p | q + 1`, values `-(z^k + z^-k)` for `k = 1..(p-1)/2`.
/// * `chi1`: `p | q - 1`, values `z^k + z^-k`.
/// * `eta1`: `p = r`, `q = 3 mod 4`; values `(-1 + g)/2` on `c` and `(-1 - g)/2`
///   on `d` where `g` is the quadratic Gauss sum.
/// * `psi_ext`: `f = 2`; the restriction `xi + xi^phi` of a character of an
///   extension by the field automorphism, with `xi` the `theta1` or `chi1`
///   slice, one value `xi(x) + xi(x^r)` per orbit of `x -> x^r`.
pub fn psl2_character_slice(r: u64, f: u32, which: SliceKind, p: u64) -> Result<CharacterSlice> {
    if !is_prime(r) || !(1..=2).contains(&f) {
        return Err(Error::param(format!(
            "need a prime r and f in {{1,2}}, got r = {r}, f = {f}"
        )));
    }
    if !is_prime(p) || p == 2 {
        return Err(Error::param(format!("p = {p} must be an odd prime")));
    }
    let q = r.pow(f);
    let half = (p - 1) / 2;
    let pairs = |k: u64| vec![k, p - k];
    match which {
        SliceKind::Theta1 | SliceKind::Chi1 => {
            let (sign, n, name, gen) = if which == SliceKind::Theta1 {
                if (q + 1) % p != 0 || (q - 1) % p == 0 {
                    return Err(Error::param(format!(
                        "theta1 needs p | q + 1 and p not dividing q - 1; p = {p}, q = {q}"
                    )));
                }
                (-1, q + 1, "theta1", "b")
            } else {
                if (q - 1) % p != 0 {
                    return Err(Error::param(format!(
                        "chi1 needs p | q - 1; p = {p}, q = {q}"
                    )));
                }
                (1, q - 1, "chi1", "a")
            };
            let step = n / (2 * p);
            let mut s = CharacterSlice::new(
                p,
                (1..=half).map(|k| format!("{gen}^{}", k * step)).collect(),
                (1..=half).map(|k| trace_value(p, k, sign)).collect(),
                true,
                format!(
                    "{name} of PSL(2,{q}) on elements of order {p}; {gen} has order {}",
                    n / 2
                ),
            )?;
            s.residues = Some((1..=half).map(pairs).collect());
            Ok(s)
        }
        SliceKind::Eta1 => {
            if p != r || q % 4 != 3 {
                return Err(Error::param(format!(
                    "eta1 needs p = r and r^f = 3 mod 4; p = {p}, q = {q}"
                )));
            }
            let g = gauss_sum(r)?;
            let half_r = num_rational::BigRational::new(1.into(), 2.into());
            let m1 = CyclotomicNumber::from_integer(r, -1);
            let c_val = (&m1 + &g).scale(&half_r);
            let d_val = (&m1 - &g).scale(&half_r);
            let squares: Vec<u64> = (1..r).filter(|&t| legendre(t as i64, r) == 1).collect();
            let non: Vec<u64> = (1..r).filter(|&t| legendre(t as i64, r) == -1).collect();
            let mut s = CharacterSlice::new(
                p,
                vec!["c".into(), "d".into()],
                vec![c_val, d_val],
                true,
                format!("eta1 of PSL(2,{q}) on the two classes of elements of order {r}"),
            )?;
            s.residues = Some(vec![squares, non]);
            Ok(s)
        }
        SliceKind::PsiExt => {
            if f != 2 || r == 2 {
                return Err(Error::param("psi_ext needs an odd r and f = 2"));
            }
            let base_kind = if (q + 1) % p == 0 {
                SliceKind::Theta1
            } else if (q - 1) % p == 0 {
                SliceKind::Chi1
            } else {
                return Err(Error::param(format!(
                    "p = {p} divides neither q - 1 nor q + 1 for q = {q}"
                )));
            };
            let base = psl2_character_slice(r, f, base_kind, p)?;
            let canon = |t: u64| {
                let t = t % p;
                t.min(p - t)
            };
            let mut seen = vec![false; half as usize + 1];
            let mut labels = Vec::new();
            let mut values = Vec::new();
            let mut residues = Vec::new();
            for k in 1..=half {
                if seen[k as usize] {
                    continue;
                }
                let kr = canon(k * r);
                seen[k as usize] = true;
                seen[kr as usize] = true;
                let v = &base.values[(k - 1) as usize] + &base.values[(kr - 1) as usize];
                let mut res = vec![k, p - k, kr, p - kr];
                res.sort_unstable();
                res.dedup();
                labels.push(format!("x_{k}"));
                values.push(v);
                residues.push(res);
            }
            let mut s = CharacterSlice::new(
                p,
                labels,
                values,
                true,
                format!(
                    "psi = xi + xi^phi restricted to PSL(2,{q}), xi = {base_kind}, on orbits of x -> x^{r}"
                ),
            )?;
            let expected = if base_kind == SliceKind::Theta1 { 4 } else { 2 };
            if s.codegrees()?.iter().any(|&c| c != expected) {
                return Err(Error::internal(format!(
                    "psi_ext codegrees differ from {expected}"
                )));
            }
            s.residues = Some(residues);
            Ok(s)
        }
    }
}

/// The permutation `class of a -> class of a^r` on the classes of elements of order `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoProfile {
    pub p: u64,
    pub r: i64,
    pub labels: Vec<String>,
    /// `image[i]` is the position of the class of `a^r` for `a` in class `i`.
    pub image: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
}

impl RhoProfile {
    fn from_image(p: u64, r: i64, labels: Vec<String>, image: Vec<usize>) -> Self {
        let mut seen = vec![false; image.len()];
        let mut orbits = Vec::new();
        for start in 0..image.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut x = image[start];
            while x != start {
                seen[x] = true;
                orbit.push(x);
                x = image[x];
            }
            orbits.push(orbit);
        }
        RhoProfile {
            p,
            r,
            labels,
            image,
            orbits,
        }
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.len()).collect()
    }

    /// Computed from the residue sets of a formula slice.
    pub fn from_residues(slice: &CharacterSlice, r: i64) -> Result<Self> {
        let residues = slice
            .residues
            .as_ref()
            .ok_or_else(|| Error::param("slice carries no residue data"))?;
        let p = slice.p;
        let rr = r.rem_euclid(p as i64) as u64;
        let image = residues
            .iter()
            .map(|set| {
                let t = set[0] * rr % p;
                residues
                    .iter()
                    .position(|s| s.contains(&t))
                    .ok_or_else(|| Error::internal("residue sets do not cover the units"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_image(p, r, slice.class_labels.clone(), image))
    }
}

/// Rho on all classes of elements of order `p` of `g`, labelled `C<index>`.
pub fn rho_profile(g: &PermGroup, p: u64, r: i64) -> Result<RhoProfile> {
    let classes = g.classes_of_order(p)?;
    if classes.is_empty() {
        return Err(Error::param(format!(
            "the group has no elements of order {p}"
        )));
    }
    let report = g.rationality_report()?;
    let image = classes
        .iter()
        .map(|&c| {
            let target = report.power(c, r);
            classes
                .iter()
                .position(|&x| x == target)
                .expect("powers keep the order")
        })
        .collect();
    let labels = classes.iter().map(|c| format!("C{c}")).collect();
    Ok(RhoProfile::from_image(p, r, labels, image))
}

/// Rho on the classes of the given representatives, which must be exactly one
/// per class of elements of order `p`.
pub fn rho_for_representatives(
    g: &PermGroup,
    p: u64,
    reps: &[Permutation],
    labels: &[String],
    r: i64,
) -> Result<RhoProfile> {
    let mut classes = Vec::with_capacity(reps.len());
    for x in reps {
        if x.order() != p {
            return Err(Error::param(format!(
                "representative {x} does not have order {p}"
            )));
        }
        classes.push(g.class_of(x)?);
    }
    let mut sorted = classes.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let mut all = g.classes_of_order(p)?;
    all.sort_unstable();
    if sorted.len() != classes.len() || sorted != all {
        return Err(Error::param(format!(
            "representatives do not match the {} classes of elements of order {p}",
            all.len()
        )));
    }
    let image = reps
        .iter()
        .map(|x| {
            let c = g.class_of(&x.pow(r))?;
            Ok(classes
                .iter()
                .position(|&y| y == c)
                .expect("classes are covered"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RhoProfile::from_image(p, r, labels.to_vec(), image))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    A,
    B,
    C,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionDetail {
    pub is_f_combination: bool,
    pub equivariant: bool,
    pub codegrees: Vec<u64>,
    pub independent: bool,
    pub orbit_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub applies: bool,
    pub failed_condition: Option<Condition>,
    pub detail: CriterionDetail,
}

/// Checks whether the slice excludes a Frobenius subgroup `C_p x| C_q`:
/// (a) asserted `F`-combination and `sigma_r(chi(a)) = chi(a^r)` on every class,
/// (b) `q` divides no codegree `[Q_p : Q(chi(a))]`,
/// (c) the values are linearly independent over `Q`.
pub fn frobenius_exclusion_check(
    slice: &CharacterSlice,
    q: u64,
    r: i64,
    rho: &RhoProfile,
) -> Result<CriterionReport> {
    let p = slice.p;
    let rr = r.rem_euclid(p as i64) as u64;
    if multiplicative_order(rr, p) != Some(q) {
        return Err(Error::param(format!(
            "r = {r} does not have multiplicative order {q} modulo {p}"
        )));
    }
    if rho.p != p || rho.r.rem_euclid(p as i64) as u64 != rr || rho.image.len() != slice.len() {
        return Err(Error::param(
            "rho profile does not match the slice (prime, exponent or class count)",
        ));
    }
    let sigma = GaloisAction::new(p, r)?;
    let mut equivariant = true;
    for (i, v) in slice.values.iter().enumerate() {
        if sigma.apply(v)? != slice.values[rho.image[i]] {
            equivariant = false;
        }
    }
    let codegrees = slice.codegrees()?;
    let independent = rational_independence(&slice.values);
    let failed_condition = if !(slice.is_f_combination && equivariant) {
        Some(Condition::A)
    } else if codegrees.iter().any(|c| c % q == 0) {
        Some(Condition::B)
    } else if !independent {
        Some(Condition::C)
    } else {
        None
    };
    let orbit_sizes = rho.orbit_sizes();
    let applies = failed_condition.is_none();
    if applies && orbit_sizes.iter().any(|&s| s as u64 != q) {
        return Err(Error::internal(format!(
            "criterion applies but rho has orbit sizes {orbit_sizes:?} instead of all {q}"
        )));
    }
    Ok(CriterionReport {
        applies,
        failed_condition,
        detail: CriterionDetail {
            is_f_combination: slice.is_f_combination,
            equivariant,
            codegrees,
            independent,
            orbit_sizes,
        },
    })
}

/// Arcs of `N(PSL(2, r^f))` for odd `r` given by the dihedral, Borel and
/// torus subgroups, as a function of `r^f mod 4`.
pub fn psl2_closed_form_arcs(r: u64, f: u32) -> Result<DirectedPrimeGraph> {
    if !is_prime(r) || r == 2 {
        return Err(Error::param(format!(
            "closed form needs an odd prime r, got {r}"
        )));
    }
    let q = r.pow(f);
    let (minus, plus) = pi_minus_plus(q);
    let mut arcs = Vec::new();
    let all_pairs = |set: &[u64], arcs: &mut Vec<(u64, u64)>| {
        for &s in set {
            for &t in set {
                if s != t {
                    arcs.push((s, t));
                }
            }
        }
    };
    let with_two = |set: &[u64]| {
        let mut v = vec![2];
        v.extend_from_slice(set);
        v
    };
    if q % 4 == 1 {
        all_pairs(&with_two(&minus), &mut arcs);
        all_pairs(&plus, &mut arcs);
        arcs.push((2, r));
        arcs.extend(plus.iter().map(|&s| (2, s)));
    } else {
        all_pairs(&with_two(&plus), &mut arcs);
        all_pairs(&minus, &mut arcs);
        arcs.extend(minus.iter().map(|&s| (2, s)));
    }
    arcs.extend(minus.iter().filter(|&&s| (r - 1) % s == 0).map(|&s| (s, r)));
    let mut vertices = vec![2, r];
    vertices.extend(&minus);
    vertices.extend(&plus);
    DirectedPrimeGraph::new(vertices, arcs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mechanism {
    /// `q` does not divide `p - 1`, so only an element of order `pq` could give the arc.
    Arithmetic,
    /// The reverse arc is present, so the arc would create an edge of the prime graph.
    DoubleArc,
    Criterion,
}

#[derive(Debug, Clone, Serialize)]
pub struct Discharge {
    pub arc: (u64, u64),
    pub mechanism: Mechanism,
    pub detail: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct NpqReport {
    pub r: u64,
    pub f: u32,
    pub q: u64,
    pub order: u128,
    pub pi_minus: Vec<u64>,
    pub pi_plus: Vec<u64>,
    pub nprime: DirectedPrimeGraph,
    pub closed_form: DirectedPrimeGraph,
    pub closed_form_matches: bool,
    pub discharges: Vec<Discharge>,
    pub undischarged: Vec<(u64, u64)>,
    pub verified: bool,
}

impl NpqReport {
    pub fn verdict(&self) -> &'static str {
        if self.verified {
            "VERIFIED"
        } else {
            "UNVERIFIED"
        }
    }
}

fn element_of_order(g: &PermGroup, order: u64) -> Result<Permutation> {
    g.conjugacy_classes()?
        .iter()
        .find(|c| c.element_order == order)
        .map(|c| c.representative.clone())
        .ok_or_else(|| Error::internal(format!("no element of order {order}")))
}

/// Representatives in `PSL(2, q)` matching the class labels of a theta1, chi1 or eta1 slice.
pub fn psl2_slice_representatives(
    g: &PermGroup,
    q: u64,
    slice_kind: SliceKind,
    p: u64,
) -> Result<Vec<Permutation>> {
    match slice_kind {
        SliceKind::Theta1 | SliceKind::Chi1 => {
            let n = if slice_kind == SliceKind::Theta1 {
                q + 1
            } else {
                q - 1
            };
            let b = element_of_order(g, n / 2)?;
            let step = n / (2 * p);
            Ok((1..=(p - 1) / 2)
                .map(|k| b.pow((k * step) as i64))
                .collect())
        }
        SliceKind::Eta1 => {
            let c = element_of_order(g, p)?;
            let nu = (2..p)
                .find(|&t| legendre(t as i64, p) == -1)
                .expect("odd primes have nonsquares");
            Ok(vec![c.clone(), c.pow(nu as i64)])
        }
        SliceKind::PsiExt => Err(Error::param(
            "psi_ext slices live on an extension, not on PSL(2,q)",
        )),
    }
}

/// Replays the N-prime graph comparison for `S = PSL(2, r^f)`, `r` odd: computes
/// `N(S)`, compares it with the closed form and discharges every missing arc.
pub fn verify_npq_psl2(r: u64, f: u32) -> Result<NpqReport> {
    if !is_prime(r) || r == 2 || !(1..=2).contains(&f) {
        return Err(Error::param(format!(
            "need an odd prime r and f in {{1,2}}, got r = {r}, f = {f}"
        )));
    }
    let q = r.pow(f);
    let g = construct::build(&GroupSpec::Psl2(q))?;
    let nprime = nprime_graph(&g)?;
    let closed_form = psl2_closed_form_arcs(r, f)?;
    let (minus, plus) = pi_minus_plus(q);
    let mut discharges = Vec::new();
    let mut undischarged = Vec::new();
    for &s in nprime.vertices() {
        for &t in nprime.vertices() {
            if s == t || nprime.has_arc(s, t) {
                continue;
            }
            let (qq, p) = (s, t);
            if (p - 1) % qq != 0 {
                discharges.push(Discharge {
                    arc: (qq, p),
                    mechanism: Mechanism::Arithmetic,
                    detail: json!({"reason": format!("{qq} does not divide {p} - 1")}),
                });
                continue;
            }
            if nprime.has_arc(p, qq) {
                discharges.push(Discharge {
                    arc: (qq, p),
                    mechanism: Mechanism::DoubleArc,
                    detail: json!({"reverse_arc": [p, qq]}),
                });
                continue;
            }
            let kind = if qq == 2 && p == r && q % 4 == 3 {
                Some(SliceKind::Eta1)
            } else if plus.contains(&p) && minus.contains(&qq) {
                Some(SliceKind::Theta1)
            } else if minus.contains(&p) && plus.contains(&qq) {
                Some(SliceKind::Chi1)
            } else {
                None
            };
            let Some(kind) = kind else {
                undischarged.push((qq, p));
                continue;
            };
            let slice = psl2_character_slice(r, f, kind, p)?;
            let rexp = smallest_with_order(qq, p).expect("q divides p - 1") as i64;
            let reps = psl2_slice_representatives(&g, q, kind, p)?;
            let rho = rho_for_representatives(&g, p, &reps, &slice.class_labels, rexp)?;
            if rho != RhoProfile::from_residues(&slice, rexp)? {
                return Err(Error::internal(format!(
                    "power map of PSL(2,{q}) disagrees with the {kind} residue classes"
                )));
            }
            let report = frobenius_exclusion_check(&slice, qq, rexp, &rho)?;
            let detail = json!({
                "slice": kind.to_string(),
                "p": p,
                "q": qq,
                "r": rexp,
                "values": slice.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "report": report,
            });
            if report.applies {
                discharges.push(Discharge {
                    arc: (qq, p),
                    mechanism: Mechanism::Criterion,
                    detail,
                });
            } else {
                undischarged.push((qq, p));
            }
        }
    }
    let closed_form_matches = nprime == closed_form;
    Ok(NpqReport {
        r,
        f,
        q,
        order: g.order(),
        pi_minus: minus,
        pi_plus: plus,
        verified: closed_form_matches && undischarged.is_empty(),
        nprime,
        closed_form,
        closed_form_matches,
        discharges,
        undischarged,
    })
}

/// Pairs `(p, q)` such that `g` has a subgroup `C_p x| C_q` with nontrivial action.
pub fn realized_frobenius_pairs(g: &PermGroup) -> Result<Vec<(u64, u64)>> {
    let mut out = Vec::new();
    let els = g.elements()?;
    for p in prime_divisors(g.order()) {
        for q in prime_divisors(g.order()) {
            if q == p || (p - 1) % q != 0 {
                continue;
            }
            let mut found = false;
            for c in g.classes_of_order(p)? {
                let x = g.conjugacy_classes()?[c].representative.clone();
                let n = g.normalizer_of_cyclic(&x)?;
                if n.members().iter().any(|&i| {
                    els.order_of(i as usize) == q && x.conjugate_by(els.get(i as usize)) != x
                }) {
                    found = true;
                    break;
                }
            }
            if found {
                out.push((p, q));
            }
        }
    }
    Ok(out)
}

/// Slices of genuine characters of `g` on its elements of order `p`, each with
/// its rho profile for exponent `r`: the trivial character, the sign character
/// when `g` has odd permutations, the natural permutation character, and the
/// applicable theta1/chi1/eta1 slices when `spec` is `PSL(2,q)`.
pub fn genuine_slices(
    g: &PermGroup,
    spec: Option<&GroupSpec>,
    p: u64,
    r: i64,
) -> Result<Vec<(String, CharacterSlice, RhoProfile)>> {
    let rho = rho_profile(g, p, r)?;
    let classes = g.classes_of_order(p)?;
    let reps: Vec<Permutation> = classes
        .iter()
        .map(|&c| g.conjugacy_classes().map(|cl| cl[c].representative.clone()))
        .collect::<Result<_>>()?;
    let rational_slice = |name: &str, f: &dyn Fn(&Permutation) -> i64| -> Result<CharacterSlice> {
        CharacterSlice::new(
            p,
            rho.labels.clone(),
            reps.iter()
                .map(|x| CyclotomicNumber::from_integer(p, f(x)))
                .collect(),
            true,
            format!("{name} character"),
        )
    };
    let mut out = vec![(
        "trivial".to_string(),
        rational_slice("trivial", &|_| 1)?,
        rho.clone(),
    )];
    let sign = |x: &Permutation| -> i64 {
        if x.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0 {
            1
        } else {
            -1
        }
    };
    if g.generators().iter().any(|x| sign(x) == -1) {
        out.push((
            "sign".to_string(),
            rational_slice("sign", &sign)?,
            rho.clone(),
        ));
    }
    let fixed = |x: &Permutation| (x.degree() - x.moved_points().count()) as i64;
    out.push((
        "permutation".to_string(),
        rational_slice("permutation", &fixed)?,
        rho.clone(),
    ));
    if let Some(GroupSpec::Psl2(q)) = spec {
        if let Some((rr, f)) = crate::numtheory::prime_power(*q) {
            if rr != 2 && f <= 2 {
                for kind in [SliceKind::Theta1, SliceKind::Chi1, SliceKind::Eta1] {
                    let Ok(slice) = psl2_character_slice(rr, f, kind, p) else {
                        continue;
                    };
                    let reps = psl2_slice_representatives(g, *q, kind, p)?;
                    let rho = rho_for_representatives(g, p, &reps, &slice.class_labels, r)?;
                    out.push((kind.to_string(), slice, rho));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(s: &str) -> CyclotomicNumber {
        s.parse().unwrap()
    }

    #[test]
    fn slice_examples() {
        let s = psl2_character_slice(11, 1, SliceKind::Chi1, 5).unwrap();
        assert_eq!(
            s.values,
            vec![
                CyclotomicNumber::zeta_trace(5, 1),
                CyclotomicNumber::zeta_trace(5, 2)
            ]
        );
        let s = psl2_character_slice(11, 1, SliceKind::Theta1, 3).unwrap();
        assert_eq!(s.values, vec![CyclotomicNumber::from_integer(3, 1)]);
        let s = psl2_character_slice(7, 1, SliceKind::Eta1, 7).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.codegrees().unwrap(), vec![3, 3]);
        assert_eq!(
            &s.values[0] + &s.values[1],
            CyclotomicNumber::from_integer(7, -1)
        );
    }

    #[test]
    fn slice_preconditions() {
        assert!(psl2_character_slice(11, 1, SliceKind::Theta1, 5).is_err());
        assert!(psl2_character_slice(13, 1, SliceKind::Eta1, 13).is_err());
        assert!(psl2_character_slice(7, 1, SliceKind::PsiExt, 3).is_err());
        assert!(psl2_character_slice(7, 3, SliceKind::Chi1, 3).is_err());
        assert!(psl2_character_slice(7, 1, SliceKind::Chi1, 2).is_err());
    }

    #[test]
    fn psi_ext_codegrees() {
        // 5 | 3^2 + 1, and 3 has order 4 mod 5
        let s = psl2_character_slice(3, 2, SliceKind::PsiExt, 5).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.codegrees().unwrap(), vec![4]);
        // 3 | 5^2 - 1
        let s = psl2_character_slice(5, 2, SliceKind::PsiExt, 3).unwrap();
        assert_eq!(s.codegrees().unwrap(), vec![2]);
        // 13 | 5^2 + 1
        let s = psl2_character_slice(5, 2, SliceKind::PsiExt, 13).unwrap();
        assert_eq!(s.len(), 3);
        assert!(rational_independence(&s.values));
    }

    #[test]
    fn exclusion_for_eta1_at_seven() {
        let s = psl2_character_slice(7, 1, SliceKind::Eta1, 7).unwrap();
        let rho = RhoProfile::from_residues(&s, -1).unwrap();
        let rep = frobenius_exclusion_check(&s, 2, -1, &rho).unwrap();
        assert!(rep.applies, "{rep:?}");
        assert_eq!(rep.detail.orbit_sizes, vec![2]);
    }

    #[test]
    fn wrong_exponent_is_a_parameter_error() {
        let s = psl2_character_slice(7, 1, SliceKind::Eta1, 7).unwrap();
        let rho = RhoProfile::from_residues(&s, 2).unwrap();
        assert!(matches!(
            frobenius_exclusion_check(&s, 2, 2, &rho),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn slice_json_round_trip() {
        let text = r#"{"p":7,"classes":["c","d"],"values":["(1/2 - 1/2*z^3)@7","(z)@7"],"isFCombination":true,"provenance":"test"}"#;
        let s: CharacterSlice = serde_json::from_str(text).unwrap();
        assert_eq!(s.values[0], cyc("(1/2 - 1/2*z^3)@7"));
        let back: CharacterSlice =
            serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"p":7,"classes":["c"],"values":["(z)@5"],"isFCombination":true}"#;
        assert!(serde_json::from_str::<CharacterSlice>(bad).is_err());
    }

    #[test]
    fn closed_forms() {
        let arcs = |r, f| psl2_closed_form_arcs(r, f).unwrap().arcs().to_vec();
        assert_eq!(arcs(5, 1), vec![(2, 3), (2, 5)]);
        assert_eq!(arcs(7, 1), vec![(2, 3), (3, 7)]);
        assert_eq!(arcs(3, 2), vec![(2, 3), (2, 5)]);
        assert_eq!(arcs(11, 1), vec![(2, 3), (2, 5), (3, 2), (5, 11)]);
        assert_eq!(arcs(13, 1), vec![(2, 3), (2, 7), (2, 13), (3, 2), (3, 13)]);
    }
}
