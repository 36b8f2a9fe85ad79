//! Finite `{-, ▷}`-algebras given by operation tables, and the structure
//! derived from them.
//!
//! Elements are the ids `0..n`. The derived meet is `a ⊓ b = a - (a - b)`,
//! the order is `a ≤ b ⟺ a ⊓ b = a`, and the zero is the common value of
//! `a - a`.

pub mod downset;
pub mod laws;
pub mod quotient;
pub mod relations;
mod set;

pub use set::ElementSet;

use crate::error::{Error, Result, MAX_ELEMENTS};

/// An element id of a [`FiniteAlgebra`].
pub type Elem = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    size: usize,
    minus: Vec<Elem>,
    restrict: Vec<Elem>,
    zero: Elem,
    names: Option<Vec<String>>,
    /// `down[a] = {b : b ≤ a}`
    down: Vec<ElementSet>,
    /// `up[a] = {b : a ≤ b}`
    up: Vec<ElementSet>,
}

impl FiniteAlgebra {
    /// Builds an algebra from row-major tables, `minus[a][b] = a - b` and
    /// `restrict[a][b] = a ▷ b`.
    pub fn new(minus: Vec<Vec<Elem>>, restrict: Vec<Vec<Elem>>) -> Result<Self> {
        let n = minus.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::SizeCap {
                what: "algebra",
                actual: n,
                cap: MAX_ELEMENTS,
            });
        }
        if restrict.len() != n {
            return Err(Error::Shape(format!(
                "minus has {n} rows but restrict has {}",
                restrict.len()
            )));
        }
        let flatten = |name: &'static str, rows: Vec<Vec<Elem>>| -> Result<Vec<Elem>> {
            let mut flat = Vec::with_capacity(n * n);
            for (row, cells) in rows.into_iter().enumerate() {
                if cells.len() != n {
                    return Err(Error::Shape(format!(
                        "{name} row {row} has {} entries, expected {n}",
                        cells.len()
                    )));
                }
                for (col, value) in cells.into_iter().enumerate() {
                    if value >= n {
                        return Err(Error::Table {
                            table: name,
                            row,
                            col,
                            value,
                            size: n,
                        });
                    }
                    flat.push(value);
                }
            }
            Ok(flat)
        };
        let minus = flatten("minus", minus)?;
        let restrict = flatten("restrict", restrict)?;
        Self::from_flat(n, minus, restrict)
    }

    pub(crate) fn from_flat(n: usize, minus: Vec<Elem>, restrict: Vec<Elem>) -> Result<Self> {
        debug_assert_eq!(minus.len(), n * n);
        let zero = minus[0];
        for a in 1..n {
            let za = minus[a * n + a];
            if za != zero {
                return Err(Error::NoZero {
                    a: 0,
                    za: zero,
                    b: a,
                    zb: za,
                });
            }
        }
        let mut alg = FiniteAlgebra {
            size: n,
            minus,
            restrict,
            zero,
            names: None,
            down: Vec::new(),
            up: Vec::new(),
        };
        let mut down = vec![ElementSet::EMPTY; n];
        let mut up = vec![ElementSet::EMPTY; n];
        for a in 0..n {
            for b in 0..n {
                if alg.meet(a, b) == a {
                    down[b].insert(a);
                    up[a].insert(b);
                }
            }
        }
        alg.down = down;
        alg.up = up;
        Ok(alg)
    }

    /// Attaches display names; `names.len()` must equal the size.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::Shape(format!(
                "{} element names for {} elements",
                names.len(),
                self.size
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn without_names(mut self) -> Self {
        self.names = None;
        self
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.size)
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn minus(&self, a: Elem, b: Elem) -> Elem {
        self.minus[a * self.size + b]
    }

    #[inline]
    pub fn restrict(&self, a: Elem, b: Elem) -> Elem {
        self.restrict[a * self.size + b]
    }

    /// `a ⊓ b = a - (a - b)`.
    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.minus(a, self.minus(a, b))
    }

    /// `a ≤ b ⟺ a ⊓ b = a`.
    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.down[b].contains(a)
    }

    /// `a ⪯ b ⟺ a = b ▷ a`.
    #[inline]
    pub fn dom_leq(&self, a: Elem, b: Elem) -> bool {
        self.restrict(b, a) == a
    }

    /// `{b : b ≤ a}`
    pub fn down_set(&self, a: Elem) -> ElementSet {
        self.down[a]
    }

    /// `{b : a ≤ b}`
    pub fn up_set(&self, a: Elem) -> ElementSet {
        self.up[a]
    }

    /// Upward closure of a subset.
    pub fn up_closure(&self, s: ElementSet) -> ElementSet {
        s.iter().fold(ElementSet::EMPTY, |acc, a| acc.union(self.up[a]))
    }

    /// Greatest lower bound of `s` with respect to `≤`, if it exists.
    pub fn glb(&self, s: ElementSet) -> Option<Elem> {
        let lower = s.iter().fold(self.all(), |acc, a| acc.intersection(self.down[a]));
        lower.iter().find(|&l| lower.is_subset(self.down[l]))
    }

    /// Least upper bound of `s` with respect to `≤`, if it exists.
    /// The empty set has join `0` when `0` is the bottom.
    pub fn lub(&self, s: ElementSet) -> Option<Elem> {
        let upper = s.iter().fold(self.all(), |acc, a| acc.intersection(self.up[a]));
        upper.iter().find(|&u| upper.is_subset(self.up[u]))
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of an element: its declared name or its id.
    pub fn name(&self, a: Elem) -> String {
        match &self.names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    /// Looks up an element by display name or numeric id.
    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == name) {
                return Some(i);
            }
        }
        name.parse().ok().filter(|&i| i < self.size)
    }

    pub fn minus_rows(&self) -> Vec<Vec<Elem>> {
        self.minus.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    pub fn restrict_rows(&self) -> Vec<Vec<Elem>> {
        self.restrict.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    /// Relabels elements: element `a` becomes `perm[a]`.
    pub fn permute(&self, perm: &[Elem]) -> Result<Self> {
        let n = self.size;
        let mut inv = vec![0; n];
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        let mut minus = vec![0; n * n];
        let mut restrict = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                minus[a * n + b] = perm[self.minus(inv[a], inv[b])];
                restrict[a * n + b] = perm[self.restrict(inv[a], inv[b])];
            }
        }
        let alg = Self::from_flat(n, minus, restrict)?;
        match &self.names {
            Some(names) => alg.with_names((0..n).map(|a| names[inv[a]].clone()).collect()),
            None => Ok(alg),
        }
    }

    /// Tables only, concatenated row-major: used for isomorphism
    /// canonicalization and equality up to naming.
    pub fn table_key(&self) -> Vec<Elem> {
        let mut key = self.minus.clone();
        key.extend_from_slice(&self.restrict);
        key
    }

    /// Elements in decreasing height order: an element appears before every
    /// element strictly below it. Ties keep id order.
    pub fn top_down_order(&self) -> Vec<Elem> {
        let mut order: Vec<Elem> = self.elements().collect();
        order.sort_by_key(|&a| std::cmp::Reverse(self.down[a].len()));
        order
    }
}
