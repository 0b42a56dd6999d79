//! Normalized 2-cocycles with root-of-unity values.
//!
//! Cochains are normalized (value 1 whenever an argument is the identity), so
//! the exponent lattices used by the linear algebra are indexed by
//! non-identity elements only.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::arith::RootOfUnity;
use crate::group::{Element, FiniteGroup, Subgroup};
use crate::modular::{howell_basis, mat_vec, reduce_by_echelon, smith_mod};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CocycleError {
    #[error("expected a {expected}×{expected} table")]
    ShapeMismatch { expected: usize },
    #[error("cochain is not normalized at element {0}")]
    NotNormalized(usize),
    #[error("cocycle identity fails at ({g}, {h}, {k})")]
    CocycleViolation { g: usize, h: usize, k: usize },
    #[error("modulus {modulus} is too small; a multiple of {required} is needed")]
    ModulusTooSmall { modulus: u64, required: u64 },
    #[error(
        "no trivialization on the cyclic subgroup generated by {generator} with values of order dividing {modulus}"
    )]
    NoTrivialization { generator: usize, modulus: u64 },
    #[error("cochain is defined on a group of order {found}, expected {expected}")]
    OrderMismatch { expected: usize, found: usize },
}

fn lcm_of_orders<'a>(values: impl IntoIterator<Item = &'a RootOfUnity>) -> u64 {
    values.into_iter().fold(1u64, |acc, z| acc.lcm(&z.order()))
}

/// A normalized 1-cochain `f: G → μ_∞` with `f(1) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain1 {
    values: Vec<RootOfUnity>,
}

impl Cochain1 {
    pub fn trivial(group: &FiniteGroup) -> Self {
        Cochain1 { values: vec![RootOfUnity::ONE; group.order()] }
    }

    pub fn new(group: &FiniteGroup, values: Vec<RootOfUnity>) -> Result<Self, CocycleError> {
        if values.len() != group.order() {
            return Err(CocycleError::OrderMismatch { expected: group.order(), found: values.len() });
        }
        if !values[group.identity().0].is_one() {
            return Err(CocycleError::NotNormalized(group.identity().0));
        }
        Ok(Cochain1 { values })
    }

    /// `f(g) = e^{2πi·exponents[g]/modulus}`.
    pub fn from_exponents(group: &FiniteGroup, modulus: u64, exponents: &[i64]) -> Result<Self, CocycleError> {
        if modulus == 0 {
            return Err(CocycleError::ModulusTooSmall { modulus, required: 1 });
        }
        Self::new(group, exponents.iter().map(|&k| RootOfUnity::new(k, modulus)).collect())
    }

    #[inline]
    pub fn value(&self, g: Element) -> RootOfUnity {
        self.values[g.0]
    }

    pub fn values(&self) -> &[RootOfUnity] {
        &self.values
    }

    /// Least common multiple of the orders of the values.
    pub fn modulus(&self) -> u64 {
        lcm_of_orders(&self.values)
    }
}

/// A validated normalized 2-cocycle `α: G × G → μ_N`.
///
/// Equality compares values only; the declared modulus is presentation data.
#[derive(Debug, Clone)]
pub struct Cocycle2 {
    order: usize,
    modulus: u64,
    values: Vec<RootOfUnity>,
}

impl PartialEq for Cocycle2 {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.values == other.values
    }
}

impl Eq for Cocycle2 {}

impl Cocycle2 {
    pub fn trivial(group: &FiniteGroup) -> Self {
        let n = group.order();
        Cocycle2 { order: n, modulus: 1, values: vec![RootOfUnity::ONE; n * n] }
    }

    pub(crate) fn from_trusted(order: usize, modulus: u64, values: Vec<RootOfUnity>) -> Self {
        Cocycle2 { order, modulus, values }
    }

    /// Builds from an exponent table: entry `[g][h] = k` means `e^{2πik/N}`.
    pub fn from_exponents(group: &FiniteGroup, modulus: u64, exponents: &[Vec<i64>]) -> Result<Self, CocycleError> {
        if modulus == 0 {
            return Err(CocycleError::ModulusTooSmall { modulus, required: 1 });
        }
        let n = group.order();
        if exponents.len() != n || exponents.iter().any(|r| r.len() != n) {
            return Err(CocycleError::ShapeMismatch { expected: n });
        }
        let values = exponents.iter().flatten().map(|&k| RootOfUnity::new(k, modulus)).collect();
        verify_cocycle(group, modulus, values)
    }

    #[inline]
    pub fn value(&self, g: Element, h: Element) -> RootOfUnity {
        self.values[g.0 * self.order + h.0]
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    /// The declared modulus `N`; every value lies in `μ_N`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Least common multiple of the orders of the values.
    pub fn minimal_modulus(&self) -> u64 {
        lcm_of_orders(&self.values)
    }

    /// The same cocycle declared with modulus `n`.
    pub fn with_modulus(&self, n: u64) -> Result<Self, CocycleError> {
        let required = self.minimal_modulus();
        if n == 0 || !n.is_multiple_of(required) {
            return Err(CocycleError::ModulusTooSmall { modulus: n, required });
        }
        Ok(Cocycle2 { modulus: n, ..self.clone() })
    }

    /// Exponent table relative to the declared modulus.
    pub fn exponents(&self) -> Vec<Vec<u64>> {
        self.values
            .chunks(self.order)
            .map(|row| row.iter().map(|z| z.exponent_mod(self.modulus).expect("value in μ_N")).collect())
            .collect()
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Cocycle2) -> Cocycle2 {
        assert_eq!(self.order, other.order, "cocycles on different groups");
        Cocycle2 {
            order: self.order,
            modulus: self.modulus.lcm(&other.modulus),
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| a * b).collect(),
        }
    }

    /// Pointwise power (negative powers give inverses).
    pub fn pow(&self, k: i64) -> Cocycle2 {
        Cocycle2 { values: self.values.iter().map(|z| z.pow(k)).collect(), ..self.clone() }
    }

    /// `α · δf`, a cohomologous cocycle.
    pub fn twisted_by(&self, group: &FiniteGroup, f: &Cochain1) -> Cocycle2 {
        let d = coboundary(group, f);
        self.mul(&d)
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|z| z.is_one())
    }
}

/// Validates normalization and the cocycle identity, reporting the first
/// violation in index order.
pub fn verify_cocycle(group: &FiniteGroup, modulus: u64, values: Vec<RootOfUnity>) -> Result<Cocycle2, CocycleError> {
    let n = group.order();
    if values.len() != n * n {
        return Err(CocycleError::ShapeMismatch { expected: n });
    }
    if modulus == 0 {
        return Err(CocycleError::ModulusTooSmall { modulus, required: 1 });
    }
    let required = lcm_of_orders(&values);
    if !modulus.is_multiple_of(required) {
        return Err(CocycleError::ModulusTooSmall { modulus, required });
    }
    let e = group.identity().0;
    for g in 0..n {
        if !values[g * n + e].is_one() || !values[e * n + g].is_one() {
            return Err(CocycleError::NotNormalized(g));
        }
    }
    let at = |a: Element, b: Element| values[a.0 * n + b.0];
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            let lhs = at(g, h);
            for k in group.elements() {
                // α_{g,h} α_{gh,k} = α_{h,k} α_{g,hk}
                if lhs * at(gh, k) != at(h, k) * at(g, group.mul(h, k)) {
                    return Err(CocycleError::CocycleViolation { g: g.0, h: h.0, k: k.0 });
                }
            }
        }
    }
    Ok(Cocycle2 { order: n, modulus, values })
}

/// `(δf)_{g,h} = f(g) f(h) f(gh)⁻¹`.
pub fn coboundary(group: &FiniteGroup, f: &Cochain1) -> Cocycle2 {
    let n = group.order();
    let mut values = Vec::with_capacity(n * n);
    for g in group.elements() {
        for h in group.elements() {
            values.push(f.value(g) * f.value(h) * f.value(group.mul(g, h)).inv());
        }
    }
    let modulus = f.modulus();
    Cocycle2 { order: n, modulus, values }
}

/// `γ_{g,h} = α_{g,h} α⁻¹_{ghg⁻¹,g}`: conjugation by `e_g` sends `e_h` to
/// `γ_{g,h} e_{ghg⁻¹}` in the twisted group algebra.
#[inline]
pub fn gamma(group: &FiniteGroup, alpha: &Cocycle2, g: Element, h: Element) -> RootOfUnity {
    alpha.value(g, h) * alpha.value(group.conj(g, h), g).inv()
}

/// `α_{a,b} α⁻¹_{b,a}`; equals `γ_{a,b}` when `a` and `b` commute.
#[inline]
pub fn epsilon(alpha: &Cocycle2, a: Element, b: Element) -> RootOfUnity {
    alpha.value(a, b) * alpha.value(b, a).inv()
}

/// Normalized cochain exponent lattices: positions of non-identity elements.
struct Lattices {
    nonid: Vec<usize>,
    pos: Vec<usize>,
}

impl Lattices {
    fn new(group: &FiniteGroup) -> Self {
        let e = group.identity().0;
        let nonid: Vec<usize> = (0..group.order()).filter(|&g| g != e).collect();
        let mut pos = vec![usize::MAX; group.order()];
        for (i, &g) in nonid.iter().enumerate() {
            pos[g] = i;
        }
        Lattices { nonid, pos }
    }

    fn m(&self) -> usize {
        self.nonid.len()
    }

    fn pair(&self, a: usize, b: usize) -> Option<usize> {
        let (pa, pb) = (self.pos[a], self.pos[b]);
        (pa != usize::MAX && pb != usize::MAX).then(|| pa * self.m() + pb)
    }

    /// `δ¹`: rows are pairs, columns non-identity elements.
    fn d1(&self, group: &FiniteGroup) -> Vec<Vec<i64>> {
        let m = self.m();
        let mut rows = vec![vec![0i64; m]; m * m];
        for (i, &a) in self.nonid.iter().enumerate() {
            for (j, &b) in self.nonid.iter().enumerate() {
                let row = &mut rows[i * m + j];
                row[i] += 1;
                row[j] += 1;
                let ab = group.mul(Element(a), Element(b)).0;
                if self.pos[ab] != usize::MAX {
                    row[self.pos[ab]] -= 1;
                }
            }
        }
        rows
    }

    /// `δ²`: rows are triples, columns pairs.
    fn d2(&self, group: &FiniteGroup) -> Vec<Vec<i64>> {
        let m = self.m();
        let mut rows = Vec::with_capacity(m * m * m);
        for &a in &self.nonid {
            for &b in &self.nonid {
                let ab = group.mul(Element(a), Element(b)).0;
                for &c in &self.nonid {
                    let bc = group.mul(Element(b), Element(c)).0;
                    let mut row = vec![0i64; m * m];
                    let mut add = |p: Option<usize>, s: i64| {
                        if let Some(p) = p {
                            row[p] += s;
                        }
                    };
                    add(self.pair(b, c), 1);
                    add(self.pair(ab, c), -1);
                    add(self.pair(a, bc), 1);
                    add(self.pair(a, b), -1);
                    rows.push(row);
                }
            }
        }
        rows
    }

    fn to_vector(&self, alpha: &Cocycle2, modulus: u64) -> Vec<i64> {
        let mut v = Vec::with_capacity(self.m() * self.m());
        for &a in &self.nonid {
            for &b in &self.nonid {
                v.push(alpha.value(Element(a), Element(b)).exponent_mod(modulus).expect("value in μ_N") as i64);
            }
        }
        v
    }

    fn to_cocycle(&self, order: usize, v: &[i64], modulus: u64) -> Cocycle2 {
        let m = self.m();
        let mut values = vec![RootOfUnity::ONE; order * order];
        for (i, &a) in self.nonid.iter().enumerate() {
            for (j, &b) in self.nonid.iter().enumerate() {
                values[a * order + b] = RootOfUnity::new(v[i * m + j], modulus);
            }
        }
        Cocycle2 { order, modulus, values }
    }
}

/// Returns `ρ` with `δρ = α`, if one exists with values in `μ_{N·|G|}`
/// (`N` the declared modulus of `α`).
///
/// Every coboundary with values in `μ_N` has such a witness, so absence means
/// `α` is not cohomologous to 1.
pub fn is_coboundary(group: &FiniteGroup, alpha: &Cocycle2) -> Option<Cochain1> {
    let n = group.order();
    if alpha.is_trivial() {
        return Some(Cochain1::trivial(group));
    }
    let lat = Lattices::new(group);
    let m = lat.m();
    let l = alpha.modulus() * n as u64;
    let li = l as i64;
    let b: Vec<i64> = lat.to_vector(alpha, alpha.modulus()).into_iter().map(|k| k * n as i64).collect();
    let d1 = lat.d1(group);
    let snf = smith_mod(&d1, m * m, m, li, true, true);
    let p = snf.left.as_ref().expect("tracked");
    let q = snf.right.as_ref().expect("tracked");
    let bp: Vec<i64> = p
        .iter()
        .map(|row| {
            (row.iter().zip(&b).map(|(&x, &y)| x as i128 * y as i128).sum::<i128>()).rem_euclid(li as i128) as i64
        })
        .collect();
    let mut y = vec![0i64; m];
    for (i, &bi) in bp.iter().enumerate() {
        let s = snf.diagonal.get(i).copied().unwrap_or(li);
        if s == li {
            if bi != 0 {
                return None;
            }
        } else if bi % s != 0 {
            return None;
        } else {
            y[i] = bi / s;
        }
    }
    let x: Vec<i64> = q
        .iter()
        .map(|row| {
            (row.iter().zip(&y).map(|(&u, &v)| u as i128 * v as i128).sum::<i128>()).rem_euclid(li as i128) as i64
        })
        .collect();
    let mut values = vec![RootOfUnity::ONE; n];
    for (i, &g) in lat.nonid.iter().enumerate() {
        values[g] = RootOfUnity::new(x[i], l);
    }
    let rho = Cochain1 { values };
    (coboundary(group, &rho) == *alpha).then_some(rho)
}

/// `H²(G, U(1))` with representatives valued in `μ_N`.
#[derive(Debug, Clone)]
pub struct CohomologyReport {
    modulus: u64,
    group_order: usize,
    divisors: Vec<u64>,
    representatives: Vec<Cocycle2>,
    nonid: Vec<usize>,
    pos: Vec<usize>,
    echelon: Vec<Vec<i64>>,
}

impl CohomologyReport {
    /// Invariant factors greater than 1, ascending, each dividing the next.
    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    /// One canonical cocycle per cyclic factor, generating the group.
    pub fn representatives(&self) -> &[Cocycle2] {
        &self.representatives
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `|H²(G, U(1))|`.
    pub fn order(&self) -> u64 {
        self.divisors.iter().product()
    }

    fn lattices(&self) -> Lattices {
        Lattices { nonid: self.nonid.clone(), pos: self.pos.clone() }
    }

    /// The lexicographically smallest exponent table (over non-identity pairs,
    /// row-major) among the `μ_N`-valued cocycles cohomologous to `alpha`.
    pub fn canonical_form(&self, alpha: &Cocycle2) -> Result<Cocycle2, CocycleError> {
        if alpha.group_order() != self.group_order {
            return Err(CocycleError::OrderMismatch { expected: self.group_order, found: alpha.group_order() });
        }
        let alpha = alpha.with_modulus(self.modulus)?;
        let lat = self.lattices();
        let mut v = lat.to_vector(&alpha, self.modulus);
        reduce_by_echelon(&self.echelon, &mut v, self.modulus as i64);
        Ok(lat.to_cocycle(self.group_order, &v, self.modulus))
    }

    /// True if both cocycles define the same class.
    pub fn same_class(&self, a: &Cocycle2, b: &Cocycle2) -> Result<bool, CocycleError> {
        Ok(self.canonical_form(a)? == self.canonical_form(b)?)
    }

    /// Canonical forms of every class, in mixed-radix order of the
    /// coordinates with respect to [`representatives`](Self::representatives).
    pub fn all_classes(&self) -> Vec<Cocycle2> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut coords = vec![0u64; self.divisors.len()];
        loop {
            let mut alpha = Cocycle2::from_trusted(
                self.group_order,
                self.modulus,
                vec![RootOfUnity::ONE; self.group_order * self.group_order],
            );
            for (rep, &k) in self.representatives.iter().zip(&coords) {
                alpha = alpha.mul(&rep.pow(k as i64));
            }
            alpha.modulus = self.modulus;
            out.push(self.canonical_form(&alpha).expect("representatives are μ_N-valued"));
            let mut i = 0;
            loop {
                if i == coords.len() {
                    return out;
                }
                coords[i] += 1;
                if coords[i] < self.divisors[i] {
                    break;
                }
                coords[i] = 0;
                i += 1;
            }
        }
    }
}

/// The Schur multiplier `H²(G, U(1))` via Smith normal form of the normalized
/// coboundary maps, with representatives valued in `μ_N`.
///
/// Fails with `ModulusTooSmall` when `N = 0` or some invariant factor does not
/// divide `N`; `N = |G|` always suffices.
pub fn schur_multiplier(group: &FiniteGroup, modulus: u64) -> Result<CohomologyReport, CocycleError> {
    if modulus == 0 {
        return Err(CocycleError::ModulusTooSmall { modulus, required: 1 });
    }
    let n = group.order();
    let lat = Lattices::new(group);
    let m = lat.m();
    let mut report = CohomologyReport {
        modulus,
        group_order: n,
        divisors: Vec::new(),
        representatives: Vec::new(),
        nonid: lat.nonid.clone(),
        pos: lat.pos.clone(),
        echelon: Vec::new(),
    };
    if n == 1 {
        return Ok(report);
    }
    let big_m = (n * n) as i64;
    let d2 = lat.d2(group);
    let snf2 = smith_mod(&d2, m * m * m, m * m, big_m, false, true);
    let q2 = snf2.right.as_ref().expect("tracked");
    let torsion: Vec<(usize, u64)> =
        snf2.diagonal.iter().enumerate().filter(|&(_, &d)| d != 1 && d != big_m).map(|(i, &d)| (i, d as u64)).collect();
    let required = torsion.iter().fold(1u64, |acc, &(_, d)| acc.lcm(&d));
    if !modulus.is_multiple_of(required) {
        return Err(CocycleError::ModulusTooSmall { modulus, required });
    }

    // lattice of μ_N-valued U(1)-coboundaries: D1·y/n for D1·y ≡ 0 (mod n)
    let ni = n as i64;
    let d1 = lat.d1(group);
    let snf1 = smith_mod(&d1, m * m, m, ni, false, true);
    let q1 = snf1.right.as_ref().expect("tracked");
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for j in 0..m {
        gens.push(d1.iter().map(|row| row[j]).collect());
    }
    for i in 0..m {
        let s = snf1.diagonal.get(i).copied().unwrap_or(ni);
        let scale = if s == ni { 1 } else { ni / s };
        let y: Vec<i64> = q1.iter().map(|row| row[i] * scale).collect();
        let img = mat_vec(&d1, &y);
        debug_assert!(img.iter().all(|x| x % ni == 0));
        gens.push(img.into_iter().map(|x| x / ni).collect());
    }
    let nm = modulus as i64;
    report.echelon = howell_basis(&gens, m * m, nm);

    for &(i, d) in &torsion {
        let scale = nm / d as i64;
        let v: Vec<i64> = q2.iter().map(|row| (row[i] as i128 * scale as i128).rem_euclid(nm as i128) as i64).collect();
        let alpha = lat.to_cocycle(n, &v, modulus);
        debug_assert!(verify_cocycle(group, modulus, alpha.values.clone()).is_ok());
        report.representatives.push(report.canonical_form(&alpha)?);
        report.divisors.push(d);
    }
    Ok(report)
}

/// Generators of the group `Z²(G, μ_N)` of normalized `μ_N`-valued cocycles.
pub fn cocycle_space_generators(group: &FiniteGroup, modulus: u64) -> Result<Vec<Cocycle2>, CocycleError> {
    if modulus == 0 {
        return Err(CocycleError::ModulusTooSmall { modulus, required: 1 });
    }
    let n = group.order();
    let lat = Lattices::new(group);
    let m = lat.m();
    if m == 0 || modulus == 1 {
        return Ok(Vec::new());
    }
    let nm = modulus as i64;
    let snf = smith_mod(&lat.d2(group), m * m * m, m * m, nm, false, true);
    let q = snf.right.as_ref().expect("tracked");
    let mut out = Vec::new();
    for i in 0..m * m {
        let s = snf.diagonal.get(i).copied().unwrap_or(nm);
        if s == 1 {
            continue;
        }
        let scale = if s == nm { 1 } else { nm / s };
        let v: Vec<i64> = q.iter().map(|row| (row[i] * scale).rem_euclid(nm)).collect();
        out.push(lat.to_cocycle(n, &v, modulus));
    }
    Ok(out)
}

/// The group `Z/n × Z/n` (index `a·n + b` for `(a, b)`) with
/// `α((a₁,b₁),(a₂,b₂)) = e^{2πi a₁b₂/n}`.
pub fn standard_torsion_cocycle(n: usize) -> (FiniteGroup, Cocycle2) {
    assert!(n >= 1);
    let c = FiniteGroup::cyclic(n);
    let group = c.direct_product(&c).with_label(format!("product:cyclic:{n},cyclic:{n}"));
    let order = n * n;
    let mut values = Vec::with_capacity(order * order);
    for g in 0..order {
        for h in 0..order {
            let (a1, b2) = (g / n, h % n);
            values.push(RootOfUnity::new((a1 * b2) as i64, n as u64));
        }
    }
    (group, Cocycle2 { order, modulus: n as u64, values })
}

/// The central extension `1 → μ_N → E → G → 1` with product
/// `(g₁,a₁)(g₂,a₂) = (g₁g₂, α_{g₁,g₂}a₁a₂)`; the pair `(g, e^{2πik/N})` has
/// index `g·N + k`.
pub fn extension_group(group: &FiniteGroup, alpha: &Cocycle2) -> FiniteGroup {
    let n = group.order();
    let big_n = alpha.modulus() as usize;
    let exps = alpha.exponents();
    let order = n * big_n;
    let mut mul = vec![0u32; order * order];
    for g1 in 0..n {
        for g2 in 0..n {
            let g = group.mul(Element(g1), Element(g2)).0;
            let a = exps[g1][g2] as usize;
            for k1 in 0..big_n {
                let row = (g1 * big_n + k1) * order;
                for k2 in 0..big_n {
                    mul[row + g2 * big_n + k2] = (g * big_n + (k1 + k2 + a) % big_n) as u32;
                }
            }
        }
    }
    FiniteGroup::from_trusted_table(mul, order, format!("ext({},{})", group.label(), big_n))
}

/// Pointwise restriction to a subgroup, returned together with the subgroup
/// as a group (element `i` is `subgroup.members[i]`).
pub fn restrict(group: &FiniteGroup, alpha: &Cocycle2, subgroup: &Subgroup) -> (FiniteGroup, Cocycle2) {
    let sub = group.subgroup_as_group(subgroup);
    let m = subgroup.order();
    let mut values = Vec::with_capacity(m * m);
    for &a in &subgroup.members {
        for &b in &subgroup.members {
            values.push(alpha.value(a, b));
        }
    }
    (sub, Cocycle2 { order: m, modulus: alpha.modulus(), values })
}

/// A flat trivialization `ρ` of `α` on a cyclic subgroup: `δρ = α|⟨g⟩`.
///
/// Equivalently a character `ψ(x, a) = a·ρ(x)` of the extension of `⟨g⟩`
/// restricting to the inclusion on the central factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trivialization {
    generator: Element,
    members: Vec<Element>,
    values: Vec<RootOfUnity>,
    modulus: u64,
}

impl Trivialization {
    pub fn generator(&self) -> Element {
        self.generator
    }

    /// Elements of `⟨g⟩`, sorted.
    pub fn members(&self) -> &[Element] {
        &self.members
    }

    /// Values aligned with [`members`](Self::members).
    pub fn values(&self) -> &[RootOfUnity] {
        &self.values
    }

    /// Values lie in `μ_modulus`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self, x: Element) -> Option<RootOfUnity> {
        self.members.binary_search(&x).ok().map(|i| self.values[i])
    }

    /// The paired character `ψ(x, a) = a·ρ(x)`.
    pub fn character(&self, x: Element, a: RootOfUnity) -> Option<RootOfUnity> {
        self.value(x).map(|r| a * r)
    }

    /// Inverse of [`character`](Self::character): `ρ(x) = ψ(x, 1)`.
    pub fn from_character(
        group: &FiniteGroup,
        generator: Element,
        psi: impl Fn(Element, RootOfUnity) -> RootOfUnity,
    ) -> Trivialization {
        let members = group.cyclic_subgroup(generator).members;
        let values: Vec<RootOfUnity> = members.iter().map(|&x| psi(x, RootOfUnity::ONE)).collect();
        let modulus = lcm_of_orders(&values);
        Trivialization { generator, members, values, modulus }
    }

    /// True if `δρ = α` on `⟨g⟩`.
    pub fn trivializes(&self, group: &FiniteGroup, alpha: &Cocycle2) -> bool {
        self.members.iter().zip(&self.values).all(|(&x, &rx)| {
            self.members.iter().zip(&self.values).all(|(&y, &ry)| {
                self.value(group.mul(x, y)).is_some_and(|rxy| rx * ry * rxy.inv() == alpha.value(x, y))
            })
        })
    }
}

/// All flat trivializations of `α` on `⟨g⟩` with values in `μ_M`, sorted
/// lexicographically by value vector over the sorted members.
///
/// `M` defaults to `|g|` times the order of the values of `α` on `⟨g⟩`, which
/// always admits exactly `|g|` trivializations.
pub fn flat_trivializations_on_cyclic(
    group: &FiniteGroup,
    alpha: &Cocycle2,
    g: Element,
    modulus: Option<u64>,
) -> Result<Vec<Trivialization>, CocycleError> {
    let powers = group.powers(g);
    let m = powers.len() as u64;
    let big_m = match modulus {
        Some(0) => return Err(CocycleError::ModulusTooSmall { modulus: 0, required: 1 }),
        Some(x) => x,
        None => {
            let inner = powers
                .iter()
                .flat_map(|&a| powers.iter().map(move |&b| (a, b)))
                .fold(1u64, |acc, (a, b)| acc.lcm(&alpha.value(a, b).order()));
            inner * m
        }
    };
    // ρ(g)^m = Π_j α(g^j, g)
    let target: RootOfUnity = powers.iter().map(|&p| alpha.value(p, g)).product();
    let mut members = powers.clone();
    members.sort();
    let mut out = Vec::new();
    for k in 0..big_m {
        let z = RootOfUnity::new(k as i64, big_m);
        if z.pow(m as i64) != target {
            continue;
        }
        let mut by_power = Vec::with_capacity(powers.len());
        let mut r = RootOfUnity::ONE;
        for &p in &powers {
            by_power.push(r);
            r = r * z * alpha.value(p, g).inv();
        }
        let mut values = vec![RootOfUnity::ONE; members.len()];
        for (&p, &v) in powers.iter().zip(&by_power) {
            values[members.binary_search(&p).expect("member")] = v;
        }
        if values.iter().any(|v| big_m % v.order() != 0) {
            continue;
        }
        let t = Trivialization { generator: g, members: members.clone(), values, modulus: big_m };
        if t.trivializes(group, alpha) {
            out.push(t);
        }
    }
    if out.is_empty() {
        return Err(CocycleError::NoTrivialization { generator: g.0, modulus: big_m });
    }
    out.sort_by(|a, b| a.values.cmp(&b.values));
    Ok(out)
}

/// The action of `h` on trivializations: `φ` on `⟨y⟩` becomes
/// `x ↦ γ_{h,x} φ(hxh⁻¹)` on `⟨h⁻¹yh⟩`, i.e.
/// `((h,a)·φ)(x,b) = φ(hxh⁻¹, γ_{h,x}b)`.
pub fn conjugate_action_on_character(
    group: &FiniteGroup,
    alpha: &Cocycle2,
    h: Element,
    phi: &Trivialization,
) -> Trivialization {
    let hinv = group.inv(h);
    let generator = group.conj(hinv, phi.generator);
    let members = group.cyclic_subgroup(generator).members;
    let values: Vec<RootOfUnity> = members
        .iter()
        .map(|&x| gamma(group, alpha, h, x) * phi.value(group.conj(h, x)).expect("conjugate lies in ⟨y⟩"))
        .collect();
    let modulus = lcm_of_orders(&values).lcm(&phi.modulus);
    Trivialization { generator, members, values, modulus }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v4() -> FiniteGroup {
        let c = FiniteGroup::cyclic(2);
        c.direct_product(&c)
    }

    #[test]
    fn schur_of_small_groups() {
        for n in 1..=8 {
            assert!(schur_multiplier(&FiniteGroup::cyclic(n), n as u64).unwrap().divisors().is_empty());
        }
        assert_eq!(schur_multiplier(&v4(), 4).unwrap().divisors(), &[2]);
        assert_eq!(schur_multiplier(&FiniteGroup::dihedral(4), 8).unwrap().divisors(), &[2]);
        assert!(schur_multiplier(&FiniteGroup::dihedral(3), 6).unwrap().divisors().is_empty());
        assert!(schur_multiplier(&FiniteGroup::trivial(), 1).unwrap().divisors().is_empty());
        assert!(matches!(schur_multiplier(&v4(), 3), Err(CocycleError::ModulusTooSmall { modulus: 3, required: 2 })));
    }

    #[test]
    fn standard_torsion_is_nontrivial() {
        let (g, a) = standard_torsion_cocycle(2);
        assert!(verify_cocycle(&g, 2, a.values.clone()).is_ok());
        assert!(is_coboundary(&g, &a).is_none());
        assert_eq!(gamma(&g, &a, Element(2), Element(1)), RootOfUnity::minus_one());
        let report = schur_multiplier(&g, 4).unwrap();
        assert!(!report.same_class(&a, &Cocycle2::trivial(&g)).unwrap());
        assert!(report.same_class(&a, &report.representatives()[0]).unwrap());
    }

    #[test]
    fn coboundaries_are_detected() {
        let g = FiniteGroup::dihedral(4);
        let err = Cochain1::from_exponents(&g, 8, &[1, 3, 1, 7, 2, 5, 6, 4]).unwrap_err();
        assert_eq!(err, CocycleError::NotNormalized(0));
        let f = Cochain1::from_exponents(&g, 8, &[0, 3, 1, 7, 2, 5, 6, 4]).unwrap();
        let d = coboundary(&g, &f);
        assert!(verify_cocycle(&g, d.modulus(), d.values.clone()).is_ok());
        let rho = is_coboundary(&g, &d).unwrap();
        assert_eq!(coboundary(&g, &rho), d);
    }

    #[test]
    fn violation_is_reported() {
        let (g, a) = standard_torsion_cocycle(2);
        let mut values = a.values.clone();
        values[4 + 2] = values[4 + 2] * RootOfUnity::minus_one();
        assert!(matches!(verify_cocycle(&g, 2, values), Err(CocycleError::CocycleViolation { .. })));
    }

    #[test]
    fn trivializations_on_cyclic() {
        let g = FiniteGroup::cyclic(2);
        let t = flat_trivializations_on_cyclic(&g, &Cocycle2::trivial(&g), Element(1), Some(2)).unwrap();
        assert_eq!(t.len(), 2);
        let t = flat_trivializations_on_cyclic(&g, &Cocycle2::trivial(&g), Element(0), None).unwrap();
        assert_eq!(t.len(), 1);
        let (v, a) = standard_torsion_cocycle(2);
        let t = flat_trivializations_on_cyclic(&v, &a, Element(3), None).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].value(Element(3)), Some(RootOfUnity::new(1, 4)));
        assert!(matches!(
            flat_trivializations_on_cyclic(&v, &a, Element(3), Some(2)),
            Err(CocycleError::NoTrivialization { .. })
        ));
    }

    #[test]
    fn extension_of_v4_is_nonabelian() {
        let (g, a) = standard_torsion_cocycle(2);
        let e = extension_group(&g, &a);
        assert_eq!(e.order(), 8);
        assert!(!e.is_abelian());
        let t = extension_group(&g, &Cocycle2::trivial(&g).with_modulus(2).unwrap());
        assert!(t.is_abelian());
    }
}
