//! The supercommutative algebra `A = C[z+, z-] ⊗ Λ(θ1, θ2, θ3)`: monomials, multidegrees,
//! weighted levels and the physical charge bookkeeping attached to a sector `(p, n)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;

use serde::{Deserialize, Serialize};

/// A monomial `z+^a z-^b θ_S` of `A`. Bit `i` of `theta` stands for `θ_{i+1}`; the odd factors
/// are always taken in increasing index order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AMonomial {
    pub zp: u32,
    pub zm: u32,
    pub theta: u8,
}

impl AMonomial {
    pub const UNIT: AMonomial = AMonomial { zp: 0, zm: 0, theta: 0 };

    pub fn new(zp: u32, zm: u32, theta: u8) -> Self {
        assert!(theta < 8, "theta mask has only three bits");
        AMonomial { zp, zm, theta }
    }

    pub fn theta(i: usize) -> Self {
        AMonomial::new(0, 0, 1 << i)
    }

    pub fn is_unit(&self) -> bool {
        *self == Self::UNIT
    }

    pub fn theta_count(&self) -> u32 {
        self.theta.count_ones()
    }

    /// 0 for even, 1 for odd.
    pub fn parity(&self) -> u8 {
        (self.theta_count() % 2) as u8
    }

    pub fn degree(&self) -> MultiDegree {
        MultiDegree([
            self.zp,
            self.zm,
            (self.theta & 1) as u32,
            ((self.theta >> 1) & 1) as u32,
            ((self.theta >> 2) & 1) as u32,
        ])
    }

    /// Inverse of [`AMonomial::degree`]; `None` when some θ-entry exceeds 1.
    pub fn from_degree(n: MultiDegree) -> Option<Self> {
        let [a, b, t1, t2, t3] = n.0;
        if t1 > 1 || t2 > 1 || t3 > 1 {
            return None;
        }
        Some(AMonomial::new(a, b, (t1 | (t2 << 1) | (t3 << 2)) as u8))
    }

    pub fn total_degree(&self) -> u32 {
        self.zp + self.zm + self.theta_count()
    }
}

impl fmt::Display for AMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut put = |f: &mut fmt::Formatter<'_>, s: &str, e: u32| -> fmt::Result {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{s}")
            } else {
                write!(f, "{s}^{e}")
            }
        };
        if self.zp > 0 {
            put(f, "z+", self.zp)?;
        }
        if self.zm > 0 {
            put(f, "z-", self.zm)?;
        }
        for i in 0..3 {
            if self.theta & (1 << i) != 0 {
                let name = ["θ1", "θ2", "θ3"][i];
                put(f, name, 1)?;
            }
        }
        Ok(())
    }
}

/// Koszul sign of `θ_S · θ_T = ± θ_{S∪T}` for disjoint `S`, `T`.
pub fn theta_product_sign(s: u8, t: u8) -> i32 {
    let mut inversions = 0;
    for i in 0..3 {
        if s & (1 << i) != 0 {
            // factors of T with smaller index must move left past θ_i
            inversions += (t & ((1 << i) - 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Product in `A`: `Some((sign, m))` with `m1 m2 = sign · m`, or `None` when the θ-masks meet.
pub fn multiply(m1: AMonomial, m2: AMonomial) -> Option<(i32, AMonomial)> {
    if m1.theta & m2.theta != 0 {
        return None;
    }
    let sign = theta_product_sign(m1.theta, m2.theta);
    Some((
        sign,
        AMonomial::new(m1.zp + m2.zp, m1.zm + m2.zm, m1.theta | m2.theta),
    ))
}

/// Derivative multidegree `(n_{z+}, n_{z-}, n_{θ1}, n_{θ2}, n_{θ3})`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(pub [u32; 5]);

impl MultiDegree {
    pub const ZERO: MultiDegree = MultiDegree([0; 5]);

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn theta_total(&self) -> u32 {
        self.0[2] + self.0[3] + self.0[4]
    }

    pub fn level(&self) -> u32 {
        level(*self)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &MultiDegree) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        let mut out = [0u32; 5];
        for i in 0..5 {
            out[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(MultiDegree(out))
    }

    /// Representative under swapping `z±` and permuting the `θ_i` (both are automorphisms of
    /// the superspace, so sector dimensions depend only on this orbit): `z` entries and `θ`
    /// entries each sorted ascending.
    pub fn canonical(&self) -> MultiDegree {
        let mut z = [self.0[0], self.0[1]];
        let mut t = [self.0[2], self.0[3], self.0[4]];
        z.sort_unstable();
        t.sort_unstable();
        MultiDegree([z[0], z[1], t[0], t[1], t[2]])
    }

    /// Parses `a,b,c,d,e`.
    pub fn parse(s: &str) -> Result<MultiDegree, String> {
        let parts: Vec<&str> = s.split(',').map(|t| t.trim()).collect();
        if parts.len() != 5 {
            return Err(alloc::format!("expected 5 comma-separated entries, got {}", parts.len()));
        }
        let mut out = [0u32; 5];
        for (slot, part) in out.iter_mut().zip(parts) {
            *slot = part
                .parse::<u32>()
                .map_err(|_| alloc::format!("bad multidegree entry {part:?}"))?;
        }
        Ok(MultiDegree(out))
    }

    /// All multidegrees of the given weighted level, in lexicographic order.
    pub fn of_level(level: u32) -> Vec<MultiDegree> {
        let mut out = Vec::new();
        for a in 0..=level / 3 {
            for b in 0..=(level - 3 * a) / 3 {
                let rest = level - 3 * (a + b);
                if rest % 2 != 0 {
                    continue;
                }
                let t = rest / 2;
                for c in 0..=t {
                    for d in 0..=t - c {
                        out.push(MultiDegree([a, b, c, d, t - c - d]));
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl Add for MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: MultiDegree) -> MultiDegree {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        MultiDegree(out)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = self.0;
        write!(f, "({a},{b},{c},{d},{e})")
    }
}

/// Weighted level `L = 3 n_{z+} + 3 n_{z-} + 2 (n_{θ1} + n_{θ2} + n_{θ3})`.
pub fn level(n: MultiDegree) -> u32 {
    3 * (n.0[0] + n.0[1]) + 2 * n.theta_total()
}

/// Charges `(J1, J2, q1, q2, q3)`, stored doubled so every entry is an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChargeVector {
    pub twice: [i64; 5],
}

impl ChargeVector {
    pub fn from_halves(twice: [i64; 5]) -> Self {
        ChargeVector { twice }
    }

    /// Charge of the supercharge `Q`: `(-1/2, -1/2, 1/2, 1/2, 1/2)`.
    pub fn of_q() -> Self {
        ChargeVector { twice: [-1, -1, 1, 1, 1] }
    }

    /// `deg = 2 (J1 + J2 + q1 + q2 + q3)`.
    pub fn deg(&self) -> i64 {
        self.twice.iter().sum()
    }

    /// `(J1-J2, J1+q1, J1+q2, J1+q3)`, doubled.
    pub fn conserved_combinations(&self) -> [i64; 4] {
        let [j1, j2, q1, q2, q3] = self.twice;
        [j1 - j2, j1 + q1, j1 + q2, j1 + q3]
    }

    pub fn sub(&self, other: &ChargeVector) -> ChargeVector {
        let mut t = [0; 5];
        for i in 0..5 {
            t[i] = self.twice[i] - other.twice[i];
        }
        ChargeVector { twice: t }
    }

    pub fn component_strings(&self) -> [String; 5] {
        self.twice.map(half_string)
    }
}

fn half_string(t: i64) -> String {
    if t % 2 == 0 {
        alloc::format!("{}", t / 2)
    } else {
        alloc::format!("{t}/2")
    }
}

impl fmt::Display for ChargeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.component_strings();
        write!(f, "({},{},{},{},{})", s[0], s[1], s[2], s[3], s[4])
    }
}

impl Serialize for ChargeVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.component_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChargeVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = <[String; 5]>::deserialize(deserializer)?;
        let mut twice = [0i64; 5];
        for (t, s) in twice.iter_mut().zip(parts.iter()) {
            *t = match s.split_once('/') {
                Some((num, "2")) => num.parse().map_err(serde::de::Error::custom)?,
                Some(_) => return Err(serde::de::Error::custom("charges are half-integers")),
                None => 2 * s.parse::<i64>().map_err(serde::de::Error::custom)?,
            };
        }
        Ok(ChargeVector { twice })
    }
}

/// Charges of a word of length `p` in multidegree `n`. Total in `(p, n)`: sector validity is
/// the caller's business.
pub fn charges(p: u32, n: MultiDegree) -> ChargeVector {
    let [zp, zm, t1, t2, t3] = n.0.map(|v| v as i64);
    let p = p as i64;
    let th = t1 + t2 + t3;
    ChargeVector {
        twice: [
            2 * zm + th - p,
            2 * zp + th - p,
            p + t1 - t2 - t3,
            p - t1 + t2 - t3,
            p - t1 - t2 + t3,
        ],
    }
}

/// Every non-unit monomial whose degree vector is `<= bound`, ordered by `z+` exponent, then
/// `z-` exponent, then θ-mask read as a binary number.
pub fn enumerate_monomials(bound: MultiDegree) -> Vec<AMonomial> {
    let [a, b, t1, t2, t3] = bound.0;
    let mut out = Vec::new();
    for zp in 0..=a {
        for zm in 0..=b {
            for mask in 0u8..8 {
                let bits = [mask & 1, (mask >> 1) & 1, (mask >> 2) & 1];
                if bits[0] as u32 > t1 || bits[1] as u32 > t2 || bits[2] as u32 > t3 {
                    continue;
                }
                let m = AMonomial::new(zp, zm, mask);
                if !m.is_unit() {
                    out.push(m);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn levels() {
        assert_eq!(level(MultiDegree([0, 0, 4, 4, 4])), 24);
        assert_eq!(level(MultiDegree([0, 0, 3, 3, 3])), 18);
        assert_eq!(level(MultiDegree::ZERO), 0);
        assert_eq!(level(MultiDegree([1, 1, 2, 2, 2])), 18);
    }

    #[test]
    fn charge_table() {
        let a = charges(8, MultiDegree([0, 0, 3, 3, 3]));
        let b = charges(8, MultiDegree([1, 1, 2, 2, 2]));
        assert_eq!(a.twice, [1, 1, 5, 5, 5]);
        assert_eq!(b.twice, [0, 0, 6, 6, 6]);
        assert_eq!(b.sub(&a), ChargeVector::of_q());
        assert_eq!(charges(0, MultiDegree::ZERO).twice, [0; 5]);
        assert_eq!(a.to_string(), "(1/2,1/2,5/2,5/2,5/2)");
    }

    #[test]
    fn monomial_enumeration() {
        let m = enumerate_monomials(MultiDegree([0, 0, 1, 1, 0]));
        assert_eq!(
            m,
            [AMonomial::theta(0), AMonomial::theta(1), AMonomial::new(0, 0, 3)]
        );
        assert_eq!(
            enumerate_monomials(MultiDegree([1, 0, 0, 0, 0])),
            [AMonomial::new(1, 0, 0)]
        );
        assert_eq!(enumerate_monomials(MultiDegree([0, 0, 1, 1, 1])).len(), 7);
    }

    #[test]
    fn theta_products() {
        let t1 = AMonomial::theta(0);
        let t2 = AMonomial::theta(1);
        let t3 = AMonomial::theta(2);
        assert_eq!(multiply(t1, t2), Some((1, AMonomial::new(0, 0, 3))));
        assert_eq!(multiply(t2, t1), Some((-1, AMonomial::new(0, 0, 3))));
        assert_eq!(multiply(t1, t1), None);
        let zp = AMonomial::new(1, 0, 0);
        assert_eq!(
            multiply(zp, AMonomial::new(0, 0, 5)),
            Some((1, AMonomial::new(1, 0, 5)))
        );
        // θ3 · θ1θ2 = θ1θ2θ3 (two transpositions)
        assert_eq!(multiply(t3, AMonomial::new(0, 0, 3)), Some((1, AMonomial::new(0, 0, 7))));
        // θ2 · θ1θ3 = -θ1θ2θ3
        assert_eq!(multiply(t2, AMonomial::new(0, 0, 5)), Some((-1, AMonomial::new(0, 0, 7))));
    }

    #[test]
    fn of_level_is_exact() {
        for l in 0..14 {
            let ns = MultiDegree::of_level(l);
            for n in &ns {
                assert_eq!(n.level(), l);
            }
            let brute = (0..=l)
                .flat_map(|a| (0..=l).map(move |b| (a, b)))
                .flat_map(|(a, b)| {
                    (0..=l).flat_map(move |c| {
                        (0..=l).flat_map(move |d| (0..=l).map(move |e| MultiDegree([a, b, c, d, e])))
                    })
                })
                .filter(|n| n.level() == l)
                .count();
            assert_eq!(ns.len(), brute);
        }
    }

    fn arb_mono() -> impl Strategy<Value = AMonomial> {
        (0u32..3, 0u32..3, 0u8..8).prop_map(|(a, b, t)| AMonomial::new(a, b, t))
    }

    proptest! {
        #[test]
        fn supercommutative(m1 in arb_mono(), m2 in arb_mono()) {
            let ab = multiply(m1, m2);
            let ba = multiply(m2, m1);
            match (ab, ba) {
                (None, None) => {}
                (Some((s1, x)), Some((s2, y))) => {
                    prop_assert_eq!(x, y);
                    let koszul = if m1.parity() == 1 && m2.parity() == 1 { -1 } else { 1 };
                    prop_assert_eq!(s1, koszul * s2);
                    prop_assert_eq!(x.degree(), m1.degree() + m2.degree());
                }
                _ => prop_assert!(false, "zero pattern must be symmetric"),
            }
        }

        #[test]
        fn associative(m1 in arb_mono(), m2 in arb_mono(), m3 in arb_mono()) {
            let left = multiply(m1, m2).and_then(|(s, x)| multiply(x, m3).map(|(t, y)| (s * t, y)));
            let right = multiply(m2, m3).and_then(|(s, x)| multiply(m1, x).map(|(t, y)| (s * t, y)));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn level_additive(a in proptest::array::uniform5(0u32..5), b in proptest::array::uniform5(0u32..5)) {
            let (a, b) = (MultiDegree(a), MultiDegree(b));
            prop_assert_eq!(level(a + b), level(a) + level(b));
        }

        #[test]
        fn q_shifts_charges(p in 0u32..12, n in proptest::array::uniform5(0u32..6)) {
            let n = MultiDegree(n);
            let c0 = charges(p, n);
            let c1 = charges(p + 1, n);
            prop_assert_eq!(c1.deg() - c0.deg(), 1);
            prop_assert_eq!(c1.sub(&c0), ChargeVector::of_q());
            // Q's own charge has vanishing conserved combinations.
            prop_assert_eq!(ChargeVector::of_q().conserved_combinations(), [0, 0, 0, 0]);
        }
    }
}
