use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::PolyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// Coupling mask `x - (x mod 4) + 1`.
    Thm1,
    /// Coupling mask `4x + 1`.
    Thm2,
}

impl Rule {
    #[inline(always)]
    pub(crate) fn mask(self, x: u64) -> u64 {
        match self {
            Rule::Thm1 => (x & !3) | 1,
            Rule::Thm2 => (x << 2) | 1,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Thm1 => "thm1",
            Rule::Thm2 => "thm2",
        })
    }
}

impl FromStr for Rule {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "thm1" | "clear2-set1" => Ok(Rule::Thm1),
            "thm2" | "affine" => Ok(Rule::Thm2),
            _ => Err(PolyError::UnknownRule(s.to_owned())),
        }
    }
}

/// An element of `(Z/2^n Z)^m`, element 0 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ResidueVector(pub Vec<u64>);

impl ResidueVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

impl From<Vec<u64>> for ResidueVector {
    fn from(v: Vec<u64>) -> Self {
        ResidueVector(v)
    }
}

impl fmt::Display for ResidueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// The coupled quadratic map `g` on `(Z/2^n Z)^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericVectorMap {
    rule: Rule,
    n: u32,
    partner: Vec<usize>,
}

impl GenericVectorMap {
    /// Neighbour coupling: element `i` reads element `i + 1 mod m`.
    pub fn new(rule: Rule, n: u32, m: usize) -> Result<Self, PolyError> {
        if !(1..=32).contains(&n) {
            return Err(PolyError::WidthOutOfRange(n));
        }
        if m == 0 {
            return Err(PolyError::EmptyVector);
        }
        Ok(GenericVectorMap {
            rule,
            n,
            partner: (0..m).map(|i| (i + 1) % m).collect(),
        })
    }

    /// Replaces the coupling with an explicit permutation: element `i` reads
    /// element `partner[i]`.
    pub fn with_partner(mut self, partner: Vec<usize>) -> Result<Self, PolyError> {
        let m = self.m();
        let mut seen = vec![false; m];
        if partner.len() != m {
            return Err(PolyError::BadPartner(m));
        }
        for &p in &partner {
            if p >= m || std::mem::replace(&mut seen[p], true) {
                return Err(PolyError::BadPartner(m));
            }
        }
        self.partner = partner;
        Ok(self)
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self) -> &[usize] {
        &self.partner
    }

    /// `n * m`: the domain has `2^(n m)` elements.
    pub fn domain_bits(&self) -> u32 {
        self.n * self.m() as u32
    }

    pub(crate) fn modulus_mask(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    #[inline]
    pub(crate) fn apply_into(&self, v: &[u64], out: &mut [u64]) {
        let mask = self.modulus_mask();
        for (i, o) in out.iter_mut().enumerate() {
            let x = v[i];
            let c = self.rule.mask(v[self.partner[i]]);
            *o = x.wrapping_mul((2 * x).wrapping_add(c)) & mask;
        }
    }

    pub fn apply(&self, v: &ResidueVector) -> Result<ResidueVector, PolyError> {
        if v.len() != self.m() {
            return Err(PolyError::LengthMismatch {
                expected: self.m(),
                got: v.len(),
            });
        }
        let mask = self.modulus_mask();
        if let Some((index, &value)) = v.0.iter().enumerate().find(|(_, &x)| x & !mask != 0) {
            return Err(PolyError::ElementOutOfRange {
                index,
                value,
                n: self.n,
            });
        }
        let mut out = vec![0; self.m()];
        self.apply_into(&v.0, &mut out);
        Ok(ResidueVector(out))
    }
}

impl fmt::Display for GenericVectorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={} m={}", self.rule, self.n, self.m())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[u64]) -> ResidueVector {
        ResidueVector(x.to_vec())
    }

    #[test]
    fn examples() {
        let g = GenericVectorMap::new(Rule::Thm2, 3, 2).unwrap();
        assert_eq!(g.apply(&v(&[0, 0])).unwrap(), v(&[0, 0]));
        assert_eq!(g.apply(&v(&[1, 1])).unwrap(), v(&[7, 7]));
        let g = GenericVectorMap::new(Rule::Thm1, 4, 2).unwrap();
        assert_eq!(g.apply(&v(&[2, 3])).unwrap(), v(&[10, 5]));
    }

    #[test]
    fn validation() {
        let g = GenericVectorMap::new(Rule::Thm2, 3, 2).unwrap();
        assert_eq!(
            g.apply(&v(&[8, 0])),
            Err(PolyError::ElementOutOfRange {
                index: 0,
                value: 8,
                n: 3
            })
        );
        assert_eq!(
            g.apply(&v(&[1])),
            Err(PolyError::LengthMismatch {
                expected: 2,
                got: 1
            })
        );
        assert_eq!(
            GenericVectorMap::new(Rule::Thm2, 0, 2),
            Err(PolyError::WidthOutOfRange(0))
        );
        assert_eq!(
            GenericVectorMap::new(Rule::Thm2, 33, 2),
            Err(PolyError::WidthOutOfRange(33))
        );
        assert_eq!(
            GenericVectorMap::new(Rule::Thm2, 3, 0),
            Err(PolyError::EmptyVector)
        );
        assert_eq!(
            g.clone().with_partner(vec![0, 0]),
            Err(PolyError::BadPartner(2))
        );
        assert_eq!(
            g.clone().with_partner(vec![0, 2]),
            Err(PolyError::BadPartner(2))
        );
        assert_eq!(g.with_partner(vec![0]), Err(PolyError::BadPartner(2)));
    }

    #[test]
    fn full_width_wraps() {
        let g = GenericVectorMap::new(Rule::Thm2, 32, 2).unwrap();
        let w = u32::MAX;
        let expected = w.wrapping_mul(
            w.wrapping_mul(2)
                .wrapping_add(w.wrapping_mul(4).wrapping_add(1)),
        );
        let x = u64::from(w);
        assert_eq!(
            g.apply(&v(&[x, x])).unwrap(),
            v(&[expected.into(), expected.into()])
        );
    }

    #[test]
    fn rule_names() {
        assert_eq!("thm1".parse::<Rule>().unwrap(), Rule::Thm1);
        assert_eq!("THM2".parse::<Rule>().unwrap(), Rule::Thm2);
        assert!("thm3".parse::<Rule>().is_err());
    }
}
