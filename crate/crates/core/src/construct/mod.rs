//! Builders for the group families used throughout the crate, each returned
//! as a faithful permutation group whose order is checked against its
//! closed form before it is handed out.

mod field;
mod spec;

pub use field::GaloisField;
pub use spec::{GroupSpec, DEFAULT_PRESENTED};

use crate::error::{Error, Result};
use crate::modp::{self, Matrix};
use crate::numtheory::{gcd, is_prime, multiplicative_order, prime_power, smallest_with_order};
use crate::perm::{enumeration_bound_from_env, GroupFile, PermGroup, Permutation};

/// Builds the group named by `spec`, named by its canonical text form.
pub fn build(spec: &GroupSpec) -> Result<PermGroup> {
    let group = match spec {
        GroupSpec::Cyclic(n) => cyclic(*n)?,
        GroupSpec::Dihedral(n) => dihedral(*n)?,
        GroupSpec::Sym(n) => symmetric(*n)?,
        GroupSpec::Alt(n) => alternating(*n)?,
        GroupSpec::Psl2(q) => psl2(*q)?,
        GroupSpec::Frobenius { p, q, k } => frobenius(*p, *q, *k)?,
        GroupSpec::TwoFrobenius { q, n, p, c } => two_frobenius(*q, *n, *p, *c)?,
        GroupSpec::Presented { p, q, r, .. } => presented(*p, *q, *r)?,
        GroupSpec::Affine {
            p,
            d,
            order,
            matrix,
        } => {
            let d = *d as usize;
            let rows: Matrix = matrix.chunks(d.max(1)).map(|r| r.to_vec()).collect();
            let a = affine(*p, d, std::slice::from_ref(&rows))?;
            let got = modp::order(
                &rows
                    .iter()
                    .map(|r| r.iter().map(|x| x % p).collect())
                    .collect(),
                *p,
            )
            .ok_or_else(|| Error::param("Affine matrix is not invertible"))?;
            if got != *order {
                return Err(Error::param(format!(
                    "Affine matrix has multiplicative order {got}, not {order}"
                )));
            }
            a
        }
        GroupSpec::Generators { generators, degree } => {
            let gens = generators
                .iter()
                .map(|g| Permutation::parse_cycles(g, None))
                .collect::<Result<Vec<_>>>()?;
            let needed = gens.iter().map(|g| g.degree()).max().unwrap_or(1);
            let degree = degree.unwrap_or(needed).max(1);
            if degree < needed {
                return Err(Error::param(format!(
                    "degree {degree} is smaller than the largest generator point {}",
                    needed - 1
                )));
            }
            PermGroup::new(degree, gens.iter().map(|g| g.extend_to(degree)).collect())?
        }
        GroupSpec::File(path) => {
            let text = std::fs::read_to_string(path)?;
            let file: GroupFile = serde_json::from_str(&text)?;
            PermGroup::from_file(&file)?
        }
    };
    let group = match (spec, group.name()) {
        (GroupSpec::File(_), Some(_)) => group,
        _ => group.with_name(spec.to_string()),
    };
    Ok(group.with_enumeration_bound(enumeration_bound_from_env()))
}

/// The advertised order of a spec, when it has a closed form.
pub fn expected_order(spec: &GroupSpec) -> Option<u128> {
    let fact = |n: u64| (1..=n as u128).product::<u128>();
    Some(match spec {
        GroupSpec::Cyclic(n) => (*n).max(1) as u128,
        GroupSpec::Dihedral(n) => *n as u128,
        GroupSpec::Sym(n) => fact(*n),
        GroupSpec::Alt(n) => (fact(*n) / 2).max(1),
        GroupSpec::Psl2(q) => {
            let q = *q as u128;
            q * (q * q - 1) / gcd(2, (q - 1) as u64) as u128
        }
        GroupSpec::Frobenius { p, q, k } => (*p as u128) * (*q as u128).pow(*k),
        GroupSpec::TwoFrobenius { q, p, c, .. } => {
            (*q as u128).pow(*p as u32 - 1) * *p as u128 * *c as u128
        }
        GroupSpec::Presented { p, q, .. } => (*p as u128) * (*q as u128).pow(2),
        GroupSpec::Affine { p, d, order, .. } => (*p as u128).pow(*d as u32) * *order as u128,
        GroupSpec::Generators { .. } | GroupSpec::File(_) => return None,
    })
}

fn check_order(g: &PermGroup, expected: u128, what: &str) -> Result<()> {
    if g.order() != expected {
        return Err(Error::internal(format!(
            "{what} has order {} instead of {expected}",
            g.order()
        )));
    }
    Ok(())
}

fn perm_from_fn(degree: usize, f: impl Fn(u32) -> u32) -> Result<Permutation> {
    Permutation::from_images((0..degree as u32).map(f).collect())
}

fn require_prime(x: u64, what: &str) -> Result<()> {
    if is_prime(x) {
        Ok(())
    } else {
        Err(Error::param(format!("{what} = {x} is not prime")))
    }
}

pub fn cyclic(n: u64) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::param("Cyclic(n) needs n >= 1"));
    }
    let n = n as usize;
    let g = PermGroup::new(n, vec![perm_from_fn(n, |i| (i + 1) % n as u32)?])?;
    check_order(&g, n as u128, "Cyclic")?;
    Ok(g)
}

/// Dihedral group of order `order`; orders 2 and 4 are realized on 2 and 4 points.
pub fn dihedral(order: u64) -> Result<PermGroup> {
    if order < 2 || order % 2 != 0 {
        return Err(Error::param(format!(
            "Dihedral(2n) needs an even order >= 2, got {order}"
        )));
    }
    let n = (order / 2) as usize;
    let g = match n {
        1 => PermGroup::new(2, vec![Permutation::parse_cycles("(0 1)", Some(2))?])?,
        2 => PermGroup::new(
            4,
            vec![
                Permutation::parse_cycles("(0 1)(2 3)", Some(4))?,
                Permutation::parse_cycles("(0 2)(1 3)", Some(4))?,
            ],
        )?,
        _ => {
            let m = n as u32;
            PermGroup::new(
                n,
                vec![
                    perm_from_fn(n, |i| (i + 1) % m)?,
                    perm_from_fn(n, |i| (m - i) % m)?,
                ],
            )?
        }
    };
    check_order(&g, order as u128, "Dihedral")?;
    Ok(g)
}

pub fn symmetric(n: u64) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::param("Sym(n) needs n >= 1"));
    }
    let d = n as usize;
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(d, &[vec![0, 1]])?);
    }
    if n >= 3 {
        gens.push(perm_from_fn(d, |i| (i + 1) % n as u32)?);
    }
    let g = PermGroup::new(d, gens)?;
    check_order(&g, expected_order(&GroupSpec::Sym(n)).unwrap(), "Sym")?;
    Ok(g)
}

pub fn alternating(n: u64) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::param("Alt(n) needs n >= 1"));
    }
    let d = n as usize;
    let gens = (2..n as u32)
        .map(|i| Permutation::from_cycles(d, &[vec![0, 1, i]]))
        .collect::<Result<Vec<_>>>()?;
    let g = PermGroup::new(d, gens)?;
    check_order(&g, expected_order(&GroupSpec::Alt(n)).unwrap(), "Alt")?;
    Ok(g)
}

/// `PSL(2, q)` acting on the projective line `GF(q) u {inf}`, with `inf` as
/// point `q`. Generators: `x -> x + 1`, `x -> -1/x` and `x -> w^2 x` for the
/// primitive element `w`.
pub fn psl2(q: u64) -> Result<PermGroup> {
    if prime_power(q).is_none() {
        return Err(Error::param(format!(
            "PSL(2,q) needs a prime power q, got {q}"
        )));
    }
    let k = GaloisField::new(q)?;
    let inf = q as u32;
    let deg = q as usize + 1;
    let translate = perm_from_fn(deg, |x| {
        if x == inf {
            inf
        } else {
            k.add(x as u64, 1) as u32
        }
    })?;
    let invert = perm_from_fn(deg, |x| {
        if x == inf {
            0
        } else if x == 0 {
            inf
        } else {
            k.neg(k.inv(x as u64).unwrap()) as u32
        }
    })?;
    let w2 = k.mul(k.primitive(), k.primitive());
    let scale = perm_from_fn(deg, |x| {
        if x == inf {
            inf
        } else {
            k.mul(w2, x as u64) as u32
        }
    })?;
    let gens = [translate, invert, scale]
        .into_iter()
        .filter(|g| !g.is_identity())
        .collect();
    let g = PermGroup::new(deg, gens)?;
    check_order(&g, expected_order(&GroupSpec::Psl2(q)).unwrap(), "PSL(2,q)")?;
    Ok(g)
}

/// `C_p x| C_{q^k}` on `Z_p`: `a = x -> x + 1`, `b = x -> r x` with `r` the
/// smallest positive integer of multiplicative order `q^k` mod `p`.
pub fn frobenius(p: u64, q: u64, k: u32) -> Result<PermGroup> {
    require_prime(p, "p")?;
    require_prime(q, "q")?;
    if k == 0 {
        return Err(Error::param("Frob(p,q,k) needs k >= 1"));
    }
    let qk = q.pow(k);
    if (p - 1) % qk != 0 {
        return Err(Error::param(format!(
            "q^k = {qk} does not divide p - 1 = {}",
            p - 1
        )));
    }
    let r = smallest_with_order(qk, p).expect("an element of each order dividing p - 1 exists");
    let d = p as usize;
    let a = perm_from_fn(d, |x| ((x as u64 + 1) % p) as u32)?;
    let b = perm_from_fn(d, |x| (x as u64 * r % p) as u32)?;
    for j in 1..qk as i64 {
        let bj = b.pow(j);
        if a.conjugate_by(&bj) == a {
            return Err(Error::internal(format!("b^{j} centralizes the kernel")));
        }
    }
    let g = PermGroup::new(d, vec![a, b])?;
    check_order(&g, p as u128 * qk as u128, "Frob")?;
    Ok(g)
}

/// The 2-Frobenius group `(V x| C_p) x| C_c` where `V` is the sum-zero
/// submodule of `GF(q)^p`, `C_p` shifts coordinates and `C_c` multiplies
/// indices by the smallest unit of order `c` mod `p`. Acts affinely on `V`.
pub fn two_frobenius(q: u64, n: u64, p: u64, c: u64) -> Result<PermGroup> {
    require_prime(q, "q")?;
    require_prime(p, "p")?;
    if q == p {
        return Err(Error::param("TwoFrob needs q != p"));
    }
    if n != p - 1 {
        return Err(Error::param(format!(
            "the sum-zero module has dimension p - 1 = {}, so n must be {}, got {n}",
            p - 1,
            p - 1
        )));
    }
    if c < 2 || (p - 1) % c != 0 {
        return Err(Error::param(format!(
            "c = {c} must satisfy c > 1 and c | p - 1 = {}",
            p - 1
        )));
    }
    let t = smallest_with_order(c, p).expect("units of every order dividing p - 1 exist");
    let dim = (p - 1) as usize;
    let deg = q.pow(dim as u32) as usize;
    let full = |idx: u32| -> Vec<u64> {
        let mut v = modp::decode(idx as u64, dim, q);
        let s: u64 = v.iter().sum::<u64>() % q;
        v.push((q - s) % q);
        v
    };
    let pack = |v: &[u64]| modp::encode(&v[..dim], q);
    let translate = perm_from_fn(deg, |idx| {
        let mut v = full(idx);
        v[0] = (v[0] + 1) % q;
        v[1] = (v[1] + q - 1) % q;
        pack(&v)
    })?;
    let shift = perm_from_fn(deg, |idx| {
        let v = full(idx);
        let w: Vec<u64> = (0..p as usize)
            .map(|i| v[(i + p as usize - 1) % p as usize])
            .collect();
        pack(&w)
    })?;
    let scale = perm_from_fn(deg, |idx| {
        let v = full(idx);
        let mut w = vec![0u64; p as usize];
        for (i, &x) in v.iter().enumerate() {
            w[(i as u64 * t % p) as usize] = x;
        }
        pack(&w)
    })?;
    let g = PermGroup::new(deg, vec![translate.clone(), shift.clone(), scale])?;
    let spec = GroupSpec::TwoFrobenius { q, n, p, c };
    check_order(&g, expected_order(&spec).unwrap(), "TwoFrob")?;
    verify_two_frobenius(&g, &translate, &shift, q, p, c)?;
    Ok(g)
}

fn verify_two_frobenius(
    g: &PermGroup,
    translate: &Permutation,
    shift: &Permutation,
    q: u64,
    p: u64,
    c: u64,
) -> Result<()> {
    let v = g.normal_closure(std::slice::from_ref(translate))?;
    let v_order = (q as u128).pow(p as u32 - 1);
    if v.order() as u128 != v_order {
        return Err(Error::internal("translation subgroup has the wrong order"));
    }
    let k = g.join_with(&v, std::slice::from_ref(shift))?;
    if k.order() as u128 != v_order * p as u128 || !g.is_normal(&k)? {
        return Err(Error::internal(
            "V x| C_p is not a normal subgroup of the expected order",
        ));
    }
    let els = g.elements()?;
    for &m in v.members().iter().skip(1) {
        let x = els.get(m as usize);
        if x.conjugate_by(shift) == *x {
            return Err(Error::internal("C_p fixes a nonzero vector of V"));
        }
    }
    let top = g.quotient(&v)?;
    if top.group.order() != (p * c) as u128 {
        return Err(Error::internal("H/V has the wrong order"));
    }
    for o in top.group.element_orders()? {
        if o != p && c % o != 0 {
            return Err(Error::internal(format!("H/V has an element of order {o}")));
        }
    }
    if top.group.is_abelian() {
        return Err(Error::internal("H/V is abelian"));
    }
    Ok(())
}

/// `<a, b | a^p = b^{q^2} = 1, a^b = a^r>` on `p + q^2` points: `a` and the
/// action of `b` on `Z_p`, plus the regular action of `<b>` on `q^2` extra points.
pub fn presented(p: u64, q: u64, r: u64) -> Result<PermGroup> {
    require_prime(p, "p")?;
    require_prime(q, "q")?;
    match multiplicative_order(r % p, p) {
        Some(o) if o == q => {}
        _ => {
            return Err(Error::param(format!(
                "r = {r} must have multiplicative order q = {q} modulo p = {p}"
            )))
        }
    }
    let q2 = (q * q) as u32;
    let pp = p as u32;
    let deg = (p + q * q) as usize;
    let a = perm_from_fn(deg, |x| if x < pp { (x + 1) % pp } else { x })?;
    let b = perm_from_fn(deg, |x| {
        if x < pp {
            (x as u64 * r % p) as u32
        } else {
            pp + (x - pp + 1) % q2
        }
    })?;
    if a.conjugate_by(&b) != a.pow(r as i64) {
        return Err(Error::internal("a^b != a^r"));
    }
    let g = PermGroup::new(deg, vec![a, b])?;
    check_order(&g, (p * q * q) as u128, "Presented")?;
    Ok(g)
}

/// `GF(p)^d x| <linear>` acting on `p^d` points, vectors encoded little-endian base `p`.
pub fn affine(p: u64, d: usize, linear: &[Matrix]) -> Result<PermGroup> {
    require_prime(p, "p")?;
    if d == 0 {
        return Err(Error::param("Affine needs d >= 1"));
    }
    let deg = p.pow(d as u32) as usize;
    let mut gens = Vec::new();
    for i in 0..d {
        gens.push(perm_from_fn(deg, |idx| {
            let mut v = modp::decode(idx as u64, d, p);
            v[i] = (v[i] + 1) % p;
            modp::encode(&v, p)
        })?);
    }
    for a in linear {
        if a.len() != d || a.iter().any(|r| r.len() != d) {
            return Err(Error::param(format!("matrix must be {d} x {d}")));
        }
        let a: Matrix = a
            .iter()
            .map(|r| r.iter().map(|x| x % p).collect())
            .collect();
        if modp::rank(&a, p) < d {
            return Err(Error::param("linear part is not invertible"));
        }
        let g = perm_from_fn(deg, |idx| {
            let v = modp::decode(idx as u64, d, p);
            modp::encode(&modp::apply(&a, &v, p), p)
        })?;
        if !g.is_identity() {
            gens.push(g);
        }
    }
    PermGroup::new(deg, gens)
}

/// Direct product acting on the disjoint union of the point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let deg = a.degree() + b.degree();
    let mut gens: Vec<Permutation> = a.generators().iter().map(|g| g.extend_to(deg)).collect();
    gens.extend(b.generators().iter().map(|g| g.shifted(a.degree(), deg)));
    let g = PermGroup::new(deg, gens)?;
    check_order(&g, a.order() * b.order(), "direct product")?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> PermGroup {
        build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn closed_form_orders() {
        for (s, deg, ord) in [
            ("Sym(5)", 5, 120u128),
            ("Alt(5)", 5, 60),
            ("Alt(1)", 1, 1),
            ("Cyclic(12)", 12, 12),
            ("Cyclic(1)", 1, 1),
            ("Dihedral(2)", 2, 2),
            ("Dihedral(4)", 4, 4),
            ("Dihedral(10)", 5, 10),
            ("PSL(2,7)", 8, 168),
            ("PSL(2,8)", 9, 504),
            ("PSL(2,4)", 5, 60),
            ("PSL(2,9)", 10, 360),
            ("PSL(2,13)", 14, 1092),
            ("Frob(7,3,1)", 7, 21),
            ("Frob(13,2,2)", 13, 52),
            ("Presented(7,3,2)", 16, 63),
            ("TwoFrob(2,2,3,2)", 4, 24),
            ("TwoFrob(2,4,5,4)", 16, 320),
            ("Affine(5,2,2,4,0,0,4)", 25, 50),
        ] {
            let g = b(s);
            assert_eq!(g.degree(), deg, "{s}");
            assert_eq!(g.order(), ord, "{s}");
            assert_eq!(expected_order(&s.parse().unwrap()), Some(ord), "{s}");
            assert_eq!(g.name(), Some(s));
        }
    }

    #[test]
    fn frobenius_is_nonabelian_with_trivial_center() {
        let g = b("Frob(7,3,1)");
        assert!(!g.is_abelian());
        assert_eq!(g.center().unwrap().order(), 1);
    }

    #[test]
    fn presented_center_is_order_q() {
        let g = b("Presented(7,3,2)");
        assert_eq!(g.center().unwrap().order(), 3);
    }

    #[test]
    fn parameter_errors_name_the_failure() {
        let e = build(&"Frob(7,5,1)".parse().unwrap()).unwrap_err();
        assert!(e.to_string().contains("does not divide"), "{e}");
        assert!(build(&"TwoFrob(3,6,7,4)".parse().unwrap()).is_err());
        assert!(build(&"TwoFrob(3,3,7,3)".parse().unwrap()).is_err());
        assert!(build(&"Presented(7,3,3)".parse().unwrap()).is_err());
        assert!(build(&"PSL(2,6)".parse().unwrap()).is_err());
        assert!(build(&"Dihedral(7)".parse().unwrap()).is_err());
        assert!(build(&"Affine(5,1,3,2)".parse().unwrap()).is_err());
        assert!(build(&"Affine(5,1,4,0)".parse().unwrap()).is_err());
    }

    #[test]
    fn generator_specs_and_files() {
        let g = b("<(0 1 2 3 4), (0 1)>");
        assert_eq!(g.order(), 120);
        let g = b("<(0 1)>@4");
        assert_eq!(g.degree(), 4);
        let dir = std::env::temp_dir().join(format!("nprime-construct-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("a4.json");
        std::fs::write(
            &path,
            serde_json::to_string(&alternating(4).unwrap().to_file()).unwrap(),
        )
        .unwrap();
        let g = build(&GroupSpec::File(path)).unwrap();
        assert_eq!(g.order(), 12);
    }

    #[test]
    fn direct_product_orders() {
        let g = direct_product(&cyclic(3).unwrap(), &cyclic(5).unwrap()).unwrap();
        assert_eq!(g.order(), 15);
        assert!(g.is_abelian());
    }
}
