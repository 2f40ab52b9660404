//! Reduced operator words for the tripartite two-observable scenario.
//!
//! Each party contributes an alternating product of its two box operators
//! (letters `Z` = the first-setting box, `X` = the second-setting box); both
//! letters square to the identity, and letters of different parties commute.
//! A [`Word`] is the canonical interleaving-free form: one reduced per-party
//! word per party, parties in fixed order.

use crate::matrix::CMatrix;
use crate::scalar::Scalar;

pub const PARTIES: usize = 3;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    Z,
    X,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::Z => Letter::X,
            Letter::X => Letter::Z,
        }
    }
}

/// A reduced word of one party: alternating letters (possibly empty).
pub type PartyWord = Vec<Letter>;

/// Cancels adjacent equal letters until the word alternates.
pub fn reduce_party(w: &[Letter]) -> PartyWord {
    let mut out: PartyWord = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Product of two reduced per-party words (concatenate, cancel at the seam).
pub fn mul_party(a: &[Letter], b: &[Letter]) -> PartyWord {
    let mut out = a.to_vec();
    for &l in b {
        if out.last() == Some(&l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word(pub [PartyWord; PARTIES]);

impl Word {
    pub fn identity() -> Self {
        Word([Vec::new(), Vec::new(), Vec::new()])
    }

    pub fn single(party: usize, letter: Letter) -> Self {
        let mut w = Self::identity();
        w.0[party] = vec![letter];
        w
    }

    pub fn from_parts(parts: [&[Letter]; PARTIES]) -> Self {
        Word([reduce_party(parts[0]), reduce_party(parts[1]), reduce_party(parts[2])])
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|p| p.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Hermitian adjoint: per-party reversal (letters are Hermitian).
    pub fn adjoint(&self) -> Self {
        Word(std::array::from_fn(|p| self.0[p].iter().rev().copied().collect()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Word(std::array::from_fn(|p| mul_party(&self.0[p], &other.0[p])))
    }

    /// Canonical representative of {w, w†} under the derived ordering; moments
    /// are treated as real, so a word and its adjoint share one variable.
    pub fn canon(&self) -> Self {
        let adj = self.adjoint();
        if *self <= adj {
            self.clone()
        } else {
            adj
        }
    }

    /// Sort key: total length first, then the lexicographic word.
    pub fn order_key(&self) -> (usize, Word) {
        (self.len(), self.clone())
    }

    /// The operator this word represents under concrete per-party box pairs
    /// `(Z_i, X_i)`, as per-party matrices (identity for an empty part).
    pub fn party_operator<T: Scalar>(
        &self,
        party: usize,
        z: &CMatrix<T>,
        x: &CMatrix<T>,
    ) -> CMatrix<T> {
        let mut m = CMatrix::identity(z.dim()).expect("party dim under cap");
        for &l in &self.0[party] {
            m = m.matmul(match l {
                Letter::Z => z,
                Letter::X => x,
            });
        }
        m
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, pw) in self.0.iter().enumerate() {
            if pw.is_empty() {
                continue;
            }
            if !first {
                write!(f, "·")?;
            }
            first = false;
            for l in pw {
                write!(f, "{}{}", if *l == Letter::Z { "Z" } else { "X" }, p + 1)?;
            }
        }
        Ok(())
    }
}

/// Moment `Re tr[ρ · w(Z₁,X₁,Z₂,X₂,Z₃,X₃)]` against per-party boxes and a
/// (possibly multi-qudit) composite density matrix.
pub fn moment<T: Scalar>(
    word: &Word,
    boxes: &[(CMatrix<T>, CMatrix<T>); PARTIES],
    rho: &CMatrix<T>,
) -> T {
    let ops: Vec<CMatrix<T>> = (0..PARTIES)
        .map(|p| word.party_operator(p, &boxes[p].0, &boxes[p].1))
        .collect();
    let refs: Vec<&CMatrix<T>> = ops.iter().collect();
    CMatrix::trace_kron_with(&refs, rho).re
}

/// A real linear combination of words, e.g. a fidelity or merit polynomial.
#[derive(Clone, Debug)]
pub struct WordPolynomial<T> {
    pub terms: Vec<(T, Word)>,
}

impl<T: Scalar> WordPolynomial<T> {
    pub fn evaluate(&self, boxes: &[(CMatrix<T>, CMatrix<T>); PARTIES], rho: &CMatrix<T>) -> T {
        self.terms.iter().map(|(c, w)| *c * moment(w, boxes, rho)).sum()
    }

    /// Merges duplicate words (after canonicalisation) and drops zeros.
    pub fn collect(mut self) -> Self {
        use std::collections::BTreeMap;
        let mut map: BTreeMap<Word, T> = BTreeMap::new();
        for (c, w) in self.terms.drain(..) {
            let e = map.entry(w).or_insert_with(T::zero);
            *e = *e + c;
        }
        let terms = map
            .into_iter()
            .filter(|(_, c)| c.abs() > T::epsilon() * T::of(16.0))
            .map(|(w, c)| (c, w))
            .collect();
        Self { terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::{X, Z};

    #[test]
    fn reduction_cancels_involutions() {
        assert_eq!(reduce_party(&[Z, Z]), Vec::<Letter>::new());
        assert_eq!(reduce_party(&[Z, X, X, Z]), Vec::<Letter>::new());
        assert_eq!(reduce_party(&[Z, X, Z]), vec![Z, X, Z]);
        assert_eq!(mul_party(&[Z, X], &[X, Z]), Vec::<Letter>::new());
        assert_eq!(mul_party(&[Z, X, Z], &[Z, X]), vec![Z]);
    }

    #[test]
    fn reduction_is_idempotent_and_adjoint_involutive() {
        let w = Word::from_parts([&[Z, X, Z], &[X, Z], &[]]);
        assert_eq!(Word::from_parts([&w.0[0], &w.0[1], &w.0[2]]), w);
        assert_eq!(w.adjoint().adjoint(), w);
        // u† u = identity for every word
        assert!(w.adjoint().mul(&w).is_empty());
    }

    #[test]
    fn canon_identifies_adjoint_pairs() {
        let w = Word::from_parts([&[Z, X], &[], &[]]);
        let a = w.adjoint();
        assert_eq!(w.canon(), a.canon());
        assert_ne!(w, a);
    }
}
