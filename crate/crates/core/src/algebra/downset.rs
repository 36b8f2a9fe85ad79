//! Boolean downsets `a↓` and the converse construction of a subtraction
//! from a meet-semilattice whose downsets are Boolean.

use super::laws::{check_subtraction_axioms, Verdict};
use super::{Elem, ElementSet, FiniteAlgebra};
use crate::error::{Error, Result};

/// The Boolean algebra `(a↓, ⊓, 0, a, b ↦ a - b)`.
#[derive(Clone, Debug)]
pub struct BooleanDownset {
    pub top: Elem,
    /// Elements below `top`, increasing.
    pub members: Vec<Elem>,
    /// `complement[i]` is the complement of `members[i]`.
    pub complement: Vec<Elem>,
    meet: Vec<Vec<Elem>>,
    zero: Elem,
}

impl BooleanDownset {
    pub fn member_set(&self) -> ElementSet {
        self.members.iter().copied().collect()
    }

    pub fn complement_of(&self, b: Elem) -> Option<Elem> {
        self.index(b).map(|i| self.complement[i])
    }

    fn index(&self, b: Elem) -> Option<usize> {
        self.members.binary_search(&b).ok()
    }

    pub fn meet(&self, b: Elem, c: Elem) -> Elem {
        self.meet[self.index(b).unwrap()][self.index(c).unwrap()]
    }

    /// `b ∨ c = ¬(¬b ⊓ ¬c)`
    pub fn join(&self, b: Elem, c: Elem) -> Elem {
        let nb = self.complement_of(b).unwrap();
        let nc = self.complement_of(c).unwrap();
        self.complement_of(self.meet(nb, nc)).unwrap()
    }

    pub fn leq(&self, b: Elem, c: Elem) -> bool {
        self.meet(b, c) == b
    }

    /// Atoms of the Boolean algebra.
    pub fn atoms(&self) -> Vec<Elem> {
        self.members
            .iter()
            .copied()
            .filter(|&x| {
                x != self.zero
                    && self
                        .members
                        .iter()
                        .all(|&y| y == x || y == self.zero || !self.leq(y, x))
            })
            .collect()
    }

    /// Ultrafilters: the upsets (inside `a↓`) of the atoms, each checked
    /// to contain exactly one of `b`, `¬b` for every member `b`.
    pub fn ultrafilters(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = self
            .atoms()
            .into_iter()
            .map(|x| {
                self.members
                    .iter()
                    .copied()
                    .filter(|&b| self.leq(x, b))
                    .collect::<ElementSet>()
            })
            .filter(|nu| {
                self.members
                    .iter()
                    .zip(&self.complement)
                    .all(|(&b, &nb)| nu.contains(b) != nu.contains(nb))
            })
            .collect();
        out.sort_by(|a, b| a.lex_cmp(*b));
        out
    }

    /// Exhaustive check of the Boolean algebra laws. Returns the name of the
    /// first violated law and its witness.
    pub fn check_boolean_laws(&self) -> std::result::Result<(), (&'static str, Vec<Elem>)> {
        let ms = self.member_set();
        let z = self.zero;
        let t = self.top;
        if !ms.contains(z) {
            return Err(("contains zero", vec![z]));
        }
        if !ms.contains(t) {
            return Err(("contains top", vec![t]));
        }
        for (i, &b) in self.members.iter().enumerate() {
            let nb = self.complement[i];
            if !ms.contains(nb) {
                return Err(("closed under complement", vec![b]));
            }
            for &c in &self.members {
                if !ms.contains(self.meet[i][self.index(c).unwrap()]) {
                    return Err(("closed under meet", vec![b, c]));
                }
            }
        }
        for &b in &self.members {
            let nb = self.complement_of(b).unwrap();
            if self.meet(b, b) != b {
                return Err(("idempotent", vec![b]));
            }
            if self.meet(b, z) != z {
                return Err(("zero is bottom", vec![b]));
            }
            if self.meet(b, t) != b {
                return Err(("top is top", vec![b]));
            }
            if self.meet(b, nb) != z {
                return Err(("b ⊓ ¬b = 0", vec![b]));
            }
            if self.join(b, nb) != t {
                return Err(("b ∨ ¬b = 1", vec![b]));
            }
            if self.complement_of(nb) != Some(b) {
                return Err(("¬¬b = b", vec![b]));
            }
            for &c in &self.members {
                if self.meet(b, c) != self.meet(c, b) {
                    return Err(("meet commutative", vec![b, c]));
                }
                if self.meet(b, self.join(b, c)) != b {
                    return Err(("absorption", vec![b, c]));
                }
                for &d in &self.members {
                    if self.meet(b, self.meet(c, d)) != self.meet(self.meet(b, c), d) {
                        return Err(("meet associative", vec![b, c, d]));
                    }
                    if self.meet(b, self.join(c, d)) != self.join(self.meet(b, c), self.meet(b, d)) {
                        return Err(("distributive", vec![b, c, d]));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds `a↓` with complement `b ↦ a - b` and checks it is Boolean.
pub fn boolean_downset(alg: &FiniteAlgebra, a: Elem) -> Result<BooleanDownset> {
    let members = alg.down_set(a).to_vec();
    let complement = members.iter().map(|&b| alg.minus(a, b)).collect();
    let meet = members
        .iter()
        .map(|&b| members.iter().map(|&c| alg.meet(b, c)).collect())
        .collect();
    let d = BooleanDownset {
        top: a,
        members,
        complement,
        meet,
        zero: alg.zero(),
    };
    d.check_boolean_laws().map_err(|(law, mut w)| {
        w.insert(0, a);
        Error::Inconsistent {
            law: format!("{law} in a↓"),
            witness: w,
        }
    })?;
    Ok(d)
}

/// A meet-semilattice with bottom given by its meet table, together with a
/// complement operation on every principal downset:
/// `complements[a][b]` is the complement of `b` in `a↓` (meaningful only
/// for `b ≤ a`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilatticeComplements {
    pub meet: Vec<Vec<Elem>>,
    pub complements: Vec<Vec<Option<Elem>>>,
}

impl SemilatticeComplements {
    /// Reads the meet and the downset complements off an algebra.
    pub fn from_algebra(alg: &FiniteAlgebra) -> Self {
        let meet = alg
            .elements()
            .map(|a| alg.elements().map(|b| alg.meet(a, b)).collect())
            .collect();
        let complements = alg
            .elements()
            .map(|a| alg.elements().map(|b| alg.leq(b, a).then(|| alg.minus(a, b))).collect())
            .collect();
        SemilatticeComplements { meet, complements }
    }
}

/// Defines `a - b` as the complement of `a ⊓ b` in `a↓`. The input is
/// checked to be a semilattice with every downset Boolean; the output is
/// checked against the subtraction axioms and `a - (a - b) = a ⊓ b`.
pub fn subtraction_from_boolean_downsets(input: &SemilatticeComplements) -> Result<Vec<Vec<Elem>>> {
    let n = input.meet.len();
    let reject = |law: &str, witness: Vec<Elem>| Error::Inconsistent {
        law: law.to_string(),
        witness,
    };
    if n == 0 {
        return Err(Error::Empty);
    }
    if input.complements.len() != n
        || input.meet.iter().any(|r| r.len() != n)
        || input.complements.iter().any(|r| r.len() != n)
    {
        return Err(Error::Shape("meet and complement tables must be n×n".into()));
    }
    let m = &input.meet;
    for (a, row) in m.iter().enumerate() {
        for (b, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::Table {
                    table: "meet",
                    row: a,
                    col: b,
                    value: v,
                    size: n,
                });
            }
        }
    }
    for a in 0..n {
        if m[a][a] != a {
            return Err(reject("meet idempotent", vec![a]));
        }
        for b in 0..n {
            if m[a][b] != m[b][a] {
                return Err(reject("meet commutative", vec![a, b]));
            }
            for c in 0..n {
                if m[a][m[b][c]] != m[m[a][b]][c] {
                    return Err(reject("meet associative", vec![a, b, c]));
                }
            }
        }
    }
    let zero = (0..n)
        .find(|&z| (0..n).all(|a| m[z][a] == z))
        .ok_or_else(|| reject("has bottom", vec![]))?;

    // the semilattice viewed as a {-,▷} algebra only to reuse the downset check
    let mut minus = vec![vec![zero; n]; n];
    for a in 0..n {
        let down: Vec<Elem> = (0..n).filter(|&b| m[b][a] == b).collect();
        let mut complement = Vec::with_capacity(down.len());
        for &b in &down {
            match input.complements[a][b] {
                Some(c) if c < n => complement.push(c),
                _ => return Err(reject("complement defined on a↓", vec![a, b])),
            }
        }
        let sub_meet = down.iter().map(|&b| down.iter().map(|&c| m[b][c]).collect()).collect();
        let d = BooleanDownset {
            top: a,
            members: down,
            complement,
            meet: sub_meet,
            zero,
        };
        d.check_boolean_laws().map_err(|(law, mut w)| {
            w.insert(0, a);
            reject(&format!("{law} in a↓"), w)
        })?;
        for b in 0..n {
            minus[a][b] = d.complement_of(m[a][b]).expect("a ⊓ b ≤ a");
        }
    }

    let alg = FiniteAlgebra::new(minus.clone(), input.meet.clone())?;
    let report = check_subtraction_axioms(&alg);
    if let Some(r) = report.failures().next() {
        let w = match &r.verdict {
            Verdict::Fail(w) => w.clone(),
            Verdict::Pass => unreachable!(),
        };
        return Err(reject(r.law, w));
    }
    for a in 0..n {
        for b in 0..n {
            if alg.meet(a, b) != m[a][b] {
                return Err(reject("a - (a - b) = a ⊓ b", vec![a, b]));
            }
        }
    }
    Ok(minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn f2_top_downset_is_four_element_boolean() {
        let f2 = fixtures::f2();
        let d = boolean_downset(&f2, 3).unwrap();
        assert_eq!(d.members, vec![0, 1, 2, 3]);
        assert_eq!(d.complement_of(1), Some(2));
        assert_eq!(d.atoms(), vec![1, 2]);
        assert_eq!(d.ultrafilters().len(), 2);
    }

    #[test]
    fn f2_atom_downset_is_two_element() {
        let d = boolean_downset(&fixtures::f2(), 1).unwrap();
        assert_eq!(d.members, vec![0, 1]);
    }

    #[test]
    fn zero_downset_is_degenerate() {
        for alg in fixtures::all_functional() {
            let d = boolean_downset(&alg, alg.zero()).unwrap();
            assert_eq!(d.members, vec![alg.zero()]);
            assert!(d.ultrafilters().is_empty());
        }
    }

    #[test]
    fn downset_check_rejects_bad_complement() {
        let f2 = fixtures::f2();
        let mut minus = f2.minus_rows();
        minus[3][1] = 1; // h - k = k
        minus[3][2] = 2;
        let bad = FiniteAlgebra::new(minus, f2.restrict_rows()).unwrap();
        let err = boolean_downset(&bad, 3).unwrap_err();
        assert!(matches!(err, Error::Inconsistent { .. }));
    }

    #[test]
    fn round_trips_f2_and_f3() {
        for alg in [fixtures::f2(), fixtures::f3(), fixtures::f4()] {
            let input = SemilatticeComplements::from_algebra(&alg);
            assert_eq!(subtraction_from_boolean_downsets(&input).unwrap(), alg.minus_rows());
        }
    }

    #[test]
    fn one_element_semilattice() {
        let input = SemilatticeComplements {
            meet: vec![vec![0]],
            complements: vec![vec![Some(0)]],
        };
        assert_eq!(subtraction_from_boolean_downsets(&input).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn rejects_non_boolean_downset() {
        // a 3-chain 0 < 1 < 2 has a non-Boolean downset 2↓
        let meet = vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]];
        let complements = vec![
            vec![Some(0), None, None],
            vec![Some(1), Some(0), None],
            vec![Some(2), Some(0), Some(0)],
        ];
        let err = subtraction_from_boolean_downsets(&SemilatticeComplements { meet, complements }).unwrap_err();
        assert!(matches!(err, Error::Inconsistent { .. }));
    }
}
