//! The `p^k`-torsion of Kummer p-divisible groups.
//!
//! A point of `G_q[p^k]` is a pair `(x, a/p^k)` with `x^{p^k} = q^a`. Once a
//! root `r` of `q` is fixed, the points are `x = zeta_{p^k}^j r^a`, so they
//! are stored as index pairs `(a, j)`. Products whose `a` overflows are
//! divided by `q` ("carrying"). Ring realizations in
//! `(Z/p^N)[zeta_{p^K}][q^{±1/p^K}]` serve as an independent check.

mod iso;
mod laurent;

pub use iso::{serre_tate_action_check, serre_tate_action_check_with, KummerIso, SerreTateReport};
pub use laurent::LaurentCyclo;

use serde::Serialize;

use crate::context::{pow_u64, PadicContext};
use crate::cyclotomic::CyclotomicElem;
use crate::error::{Error, Result};

/// Torsion level `k` and root depth `K >= k` over `Z/p^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KummerBase {
    pub p: u64,
    pub k: u32,
    pub depth: u32,
    ctx: PadicContext,
}

impl KummerBase {
    pub fn new(p: u64, k: u32, depth: u32, n: u32) -> Result<Self> {
        if k == 0 || depth < k {
            return Err(Error::InvalidContext(format!("need 1 <= k <= depth, got k = {k}, depth = {depth}")));
        }
        let ctx = PadicContext::new(p, n, 1)?;
        Ok(KummerBase { p, k, depth, ctx })
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    /// `p^k`, the order of the torsion level.
    pub fn order(&self) -> u64 {
        pow_u64(self.p, self.k)
    }

    /// `zeta_{p^k}` inside the level-`depth` cyclotomic ring.
    pub fn zeta_k(&self) -> CyclotomicElem {
        CyclotomicElem::zeta_power(&self.ctx, self.depth, pow_u64(self.p, self.depth - self.k) as i128)
    }

    /// `q^{num/p^k}` as a Laurent monomial in `u = q^{1/p^depth}`.
    pub fn q_power(&self, num: i64) -> LaurentCyclo {
        LaurentCyclo::monomial(CyclotomicElem::one(&self.ctx, 0), num * pow_u64(self.p, self.depth - self.k) as i64)
    }

    pub fn elements(&self) -> impl Iterator<Item = KummerElement> + '_ {
        let order = self.order();
        (0..order).flat_map(move |a| (0..order).map(move |j| KummerElement { p: self.p, k: self.k, a, j }))
    }
}

/// The point `zeta_{p^k}^j r^a` of `G_q[p^k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KummerElement {
    pub p: u64,
    pub k: u32,
    pub a: u64,
    pub j: u64,
}

impl KummerElement {
    pub fn new(base: &KummerBase, a: u64, j: u64) -> Self {
        let order = base.order();
        KummerElement { p: base.p, k: base.k, a: a % order, j: j % order }
    }

    pub fn identity(base: &KummerBase) -> Self {
        Self::new(base, 0, 0)
    }

    /// Position in the `a`-major enumeration of the group.
    pub fn index(&self) -> usize {
        (self.a * pow_u64(self.p, self.k) + self.j) as usize
    }
}

fn same_base(e1: &KummerElement, e2: &KummerElement) -> Result<u64> {
    if e1.p != e2.p || e1.k != e2.k {
        return Err(Error::BaseMismatch(format!("G[{}^{}] vs G[{}^{}]", e1.p, e1.k, e2.p, e2.k)));
    }
    Ok(pow_u64(e1.p, e1.k))
}

/// The group law with carrying.
pub fn kummer_mul(e1: &KummerElement, e2: &KummerElement) -> Result<KummerElement> {
    let order = same_base(e1, e2)?;
    let a = e1.a + e2.a;
    let a = if a >= order { a - order } else { a };
    Ok(KummerElement { a, j: (e1.j + e2.j) % order, ..*e1 })
}

/// `<(a, i), (b, j)> = ib + ja mod p^k` for `e` in `G_q` and `e'` in `G_{q^{-1}}`.
pub fn kummer_pair(e: &KummerElement, e_dual: &KummerElement) -> Result<u64> {
    let order = same_base(e, e_dual)?;
    Ok(((e.j as u128 * e_dual.a as u128 + e_dual.j as u128 * e.a as u128) % order as u128) as u64)
}

/// `G_q[p^k]` with a chosen root `r`, `r^{p^k} = q`.
#[derive(Debug, Clone, PartialEq)]
pub struct KummerGroup {
    pub base: KummerBase,
    pub q: LaurentCyclo,
    pub root: LaurentCyclo,
}

impl KummerGroup {
    pub fn new(base: KummerBase, q: LaurentCyclo, root: LaurentCyclo) -> Result<Self> {
        if root.pow(base.order()) != q {
            return Err(Error::IncompatibleRoots(format!("({root:?})^{} != {q:?}", base.order())));
        }
        Ok(KummerGroup { base, q, root })
    }

    /// `G_q` with `r = q^{1/p^k}`.
    pub fn standard(base: KummerBase) -> Self {
        let q = base.q_power(base.order() as i64);
        KummerGroup { base, q, root: base.q_power(1) }
    }

    /// `G_{q^{-1}}` with `r = q^{-1/p^k}`.
    pub fn inverted(base: KummerBase) -> Self {
        let q = base.q_power(-(base.order() as i64));
        KummerGroup { base, q, root: base.q_power(-1) }
    }

    pub fn realize(&self, e: &KummerElement) -> LaurentCyclo {
        let zeta = LaurentCyclo::constant(self.base.zeta_k().pow(e.j));
        zeta.mul(&self.root.pow(e.a))
    }

    /// The element realized by `x`, if any.
    pub fn locate(&self, x: &LaurentCyclo) -> Option<KummerElement> {
        let (_, exp) = x.as_monomial()?;
        let (_, root_exp) = self.root.as_monomial()?;
        if root_exp == 0 || exp % root_exp != 0 {
            return None;
        }
        let a = exp / root_exp;
        if a < 0 || a as u64 >= self.base.order() {
            return None;
        }
        self.base.elements().filter(|e| e.a == a as u64).find(|e| self.realize(e) == *x)
    }

    /// Check `realize(e1 e2)` against the ring product, for a given law.
    pub fn law_matches_ring(
        &self,
        law: impl Fn(&KummerElement, &KummerElement) -> KummerElement,
        e1: &KummerElement,
        e2: &KummerElement,
    ) -> Result<bool> {
        let product = self.realize(e1).mul(&self.realize(e2));
        let expected = if e1.a + e2.a >= self.base.order() {
            product.mul(&self.q.inverse_monomial()?)
        } else {
            product
        };
        Ok(self.realize(&law(e1, e2)) == expected)
    }
}

/// The realized pairing value `x^b y^a`, as an exponent of `zeta_{p^k}`.
pub fn realized_pairing(g: &KummerGroup, g_dual: &KummerGroup, e: &KummerElement, e_dual: &KummerElement) -> Option<u64> {
    let value = g.realize(e).pow(e_dual.a).mul(&g_dual.realize(e_dual).pow(e.a));
    let (coef, exp) = value.as_monomial()?;
    if exp != 0 {
        return None;
    }
    let zeta = g.base.zeta_k();
    (0..g.base.order()).find(|&m| zeta.pow(m) == *coef)
}

/// Multiplication table by element index.
pub fn cayley_table(base: &KummerBase) -> Vec<Vec<usize>> {
    let elements: Vec<_> = base.elements().collect();
    elements
        .iter()
        .map(|x| elements.iter().map(|y| kummer_mul(x, y).expect("same base").index()).collect())
        .collect()
}

/// Pairing matrix `<e_i, e'_j>` by element index.
pub fn pairing_matrix(base: &KummerBase) -> Vec<Vec<u64>> {
    let elements: Vec<_> = base.elements().collect();
    elements
        .iter()
        .map(|x| elements.iter().map(|y| kummer_pair(x, y).expect("same base")).collect())
        .collect()
}

/// Exponents `e_i` with the table's group isomorphic to `prod Z/p^{e_i}`,
/// read off from the sizes of the `p^i`-torsion subgroups.
pub fn invariant_factors(table: &[Vec<usize>], identity: usize, p: u64) -> Vec<u32> {
    let n = table.len();
    let power = |x: usize, e: u64| (0..e).fold(identity, |acc, _| table[acc][x]);
    let mut counts = vec![1usize];
    let mut level = 0u32;
    while *counts.last().unwrap() < n {
        level += 1;
        let pe = pow_u64(p, level);
        counts.push((0..n).filter(|&x| power(x, pe) == identity).count());
        if level > 64 {
            break;
        }
    }
    // r_i = number of cyclic factors of order >= p^i
    let ranks: Vec<u32> = counts
        .windows(2)
        .map(|w| ((w[1] / w[0]) as f64).log(p as f64).round() as u32)
        .collect();
    let mut factors = Vec::new();
    for (i, r) in ranks.iter().enumerate() {
        let next = ranks.get(i + 1).copied().unwrap_or(0);
        for _ in 0..(r - next) {
            factors.push(i as u32 + 1);
        }
    }
    factors.sort_unstable_by(|a, b| b.cmp(a));
    factors
}
