//! Dense linear algebra over prime fields GF(p).
//!
//! Vectors are stored one residue per entry (`u8`, so `p <= 251`). Every
//! [`Subspace`] keeps its basis in reduced row-echelon form, which makes the
//! representation canonical: two subspaces are equal exactly when their
//! bases are equal entry for entry.
//!
//! Symplectic vectors of length `2n` are laid out as `(x | z)`. The
//! symplectic form is `<(a|b), (c|d)> = a.d - b.c`.

use std::fmt;
use std::ops::ControlFlow;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Largest prime whose residues fit in a `u8`.
pub const MAX_PRIME: u64 = 251;

/// A prime field GF(p) with `2 <= p <= 251`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::UnsupportedField(p));
        }
        Ok(PrimeField { p: p as u8 })
    }

    #[inline]
    pub fn order(self) -> u64 {
        self.p as u64
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    /// Multiplicative inverse by Fermat's little theorem. Panics on zero.
    pub fn inv(self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        let mut result = 1u8;
        let mut base = a;
        let mut exp = self.p - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        result
    }

    /// `dst += factor * src`, entrywise.
    #[inline]
    pub fn axpy(self, dst: &mut [u8], factor: u8, src: &[u8]) {
        if factor == 0 {
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.add(*d, self.mul(factor, s));
        }
    }

    pub fn dot(self, a: &[u8], b: &[u8]) -> u8 {
        let p = self.p as u32;
        let sum: u32 = a
            .iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| (acc + x as u32 * y as u32) % p);
        sum as u8
    }

    /// Symplectic product of two `(x | z)` vectors of equal even length.
    pub fn symplectic(self, u: &[u8], v: &[u8]) -> u8 {
        let n = u.len() / 2;
        let (ux, uz) = u.split_at(n);
        let (vx, vz) = v.split_at(n);
        self.sub(self.dot(ux, vz), self.dot(uz, vx))
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Hamming weight: number of nonzero entries.
pub fn weight(v: &[u8]) -> usize {
    v.iter().filter(|&&e| e != 0).count()
}

/// A vector over GF(p) with validated entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqVector {
    field: PrimeField,
    entries: Vec<u8>,
}

impl FqVector {
    pub fn new(field: PrimeField, entries: Vec<u8>) -> Result<Self> {
        check_entries(field, &entries)?;
        Ok(FqVector { field, entries })
    }

    pub fn zero(field: PrimeField, len: usize) -> Self {
        FqVector {
            field,
            entries: vec![0; len],
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn weight(&self) -> usize {
        weight(&self.entries)
    }
}

fn check_entries(field: PrimeField, entries: &[u8]) -> Result<()> {
    match entries.iter().find(|&&e| e as u64 >= field.order()) {
        Some(e) => Err(Error::InputShape(format!(
            "entry {e} is not a residue of {field}"
        ))),
        None => Ok(()),
    }
}

/// Index of `v` read as a little-endian base-`p` integer.
pub fn vector_index(field: PrimeField, v: &[u8]) -> usize {
    let p = field.order() as usize;
    v.iter().rev().fold(0usize, |acc, &e| acc * p + e as usize)
}

/// Reduces `rows` in place to RREF over `ncols` columns, dropping zero rows.
/// Returns the pivot columns.
fn rref_in_place(field: PrimeField, rows: &mut Vec<Vec<u8>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let scale = field.inv(rows[r][c]);
        for e in rows[r].iter_mut() {
            *e = field.mul(*e, scale);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = field.neg(row[c]);
                field.axpy(row, f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A linear subspace of GF(p)^n held in canonical RREF.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient_dim: usize,
    basis: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace({}, dim {} in {}): {:?}",
            self.field,
            self.dim(),
            self.ambient_dim,
            self.basis
        )
    }
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut row = vec![0; ambient_dim];
                row[i] = 1;
                row
            })
            .collect();
        Subspace {
            field,
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Row space of `rows`, canonicalized. Rows may be dependent or absent.
    pub fn span(field: PrimeField, ambient_dim: usize, rows: Vec<Vec<u8>>) -> Result<Self> {
        for row in &rows {
            if row.len() != ambient_dim {
                return Err(Error::InputShape(format!(
                    "row of length {} in ambient dimension {ambient_dim}",
                    row.len()
                )));
            }
            check_entries(field, row)?;
        }
        Ok(Self::span_unchecked(field, ambient_dim, rows))
    }

    pub(crate) fn span_unchecked(field: PrimeField, ambient_dim: usize, mut rows: Vec<Vec<u8>>) -> Self {
        let pivots = rref_in_place(field, &mut rows, ambient_dim);
        Subspace {
            field,
            ambient_dim,
            basis: rows,
            pivots,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Number of elements, `p^dim`, or `None` on overflow.
    pub fn cardinality(&self) -> Option<u128> {
        (self.field.order() as u128).checked_pow(self.dim() as u32)
    }

    /// Subtracts the basis components of `v`, leaving the canonical coset
    /// representative (zero iff `v` was in the space).
    pub fn reduce(&self, v: &mut [u8]) {
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if v[c] != 0 {
                let f = self.field.neg(v[c]);
                self.field.axpy(v, f, row);
            }
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        debug_assert_eq!(v.len(), self.ambient_dim);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&e| e == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.field == other.field
            && self.ambient_dim == other.ambient_dim
            && self.basis.iter().all(|row| other.contains(row))
    }

    /// Euclidean dual under the standard inner product.
    pub fn dual(&self) -> Subspace {
        let n = self.ambient_dim;
        let mut is_pivot = vec![false; n];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let rows = (0..n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0u8; n];
                v[f] = 1;
                for (row, &c) in self.basis.iter().zip(&self.pivots) {
                    v[c] = self.field.neg(row[f]);
                }
                v
            })
            .collect();
        Subspace::span_unchecked(self.field, n, rows)
    }

    /// Dual under the symplectic form on `(x | z)` vectors.
    pub fn symplectic_dual(&self) -> Result<Subspace> {
        if self.ambient_dim % 2 != 0 {
            return Err(Error::InputShape(format!(
                "symplectic dual needs an even ambient dimension, got {}",
                self.ambient_dim
            )));
        }
        let n = self.ambient_dim / 2;
        // <c, v> = c_x.v_z - c_z.v_x = v . (-c_z | c_x)
        let twisted = self
            .basis
            .iter()
            .map(|row| {
                let (x, z) = row.split_at(n);
                z.iter()
                    .map(|&e| self.field.neg(e))
                    .chain(x.iter().copied())
                    .collect()
            })
            .collect();
        Ok(Subspace::span_unchecked(self.field, self.ambient_dim, twisted).dual())
    }

    /// True when every pair of basis rows has zero symplectic product.
    pub fn is_isotropic(&self) -> bool {
        self.ambient_dim % 2 == 0
            && self
                .basis
                .iter()
                .tuple_combinations()
                .all(|(a, b)| self.field.symplectic(a, b) == 0)
    }

    /// Linear combination `sum coeffs[i] * basis[i]`.
    pub fn combine(&self, coeffs: &[u8]) -> Vec<u8> {
        let mut v = vec![0u8; self.ambient_dim];
        for (row, &c) in self.basis.iter().zip(coeffs) {
            self.field.axpy(&mut v, c, row);
        }
        v
    }

    /// Visits every element of the space.
    pub fn for_each_element<F>(&self, f: F) -> ControlFlow<()>
    where
        F: FnMut(&[u8]) -> ControlFlow<()>,
    {
        let mut walker = SpanWalker::new(self.field, self.ambient_dim, &self.basis, None);
        walker.run(f)
    }

    /// Rows of `self` that extend a basis of `inner` to a basis of `self`.
    /// `inner` must be contained in `self`.
    pub fn complement_of(&self, inner: &Subspace) -> Vec<Vec<u8>> {
        debug_assert!(inner.is_subspace_of(self));
        let mut acc = inner.clone();
        let mut extra = Vec::new();
        for row in &self.basis {
            if !acc.contains(row) {
                extra.push(row.clone());
                let mut rows = acc.basis.clone();
                rows.push(row.clone());
                acc = Subspace::span_unchecked(self.field, self.ambient_dim, rows);
            }
        }
        extra
    }

    /// Visits every element of `self \ inner`, where `inner` is a subspace of
    /// `self`. Only the coset sums with a nonzero complement part are walked,
    /// so no membership tests are needed.
    pub fn for_each_outside<F>(&self, inner: &Subspace, f: F) -> ControlFlow<()>
    where
        F: FnMut(&[u8]) -> ControlFlow<()>,
    {
        let complement = self.complement_of(inner);
        if complement.is_empty() {
            return ControlFlow::Continue(());
        }
        let mut rows = inner.basis.clone();
        let skip = inner.dim();
        rows.extend(complement);
        let mut walker = SpanWalker::new(self.field, self.ambient_dim, &rows, Some(skip));
        walker.run(f)
    }
}

/// Odometer over coefficient vectors with incremental vector updates.
///
/// Digit `i` multiplies `rows[i]`; the lowest digit moves fastest. Starting
/// with digit `s` set to one (and all lower digits zero) skips exactly the
/// combinations supported on `rows[..s]`.
struct SpanWalker<'a> {
    field: PrimeField,
    rows: &'a [Vec<u8>],
    digits: Vec<u8>,
    current: Vec<u8>,
}

impl<'a> SpanWalker<'a> {
    fn new(field: PrimeField, len: usize, rows: &'a [Vec<u8>], start: Option<usize>) -> Self {
        let mut digits = vec![0u8; rows.len()];
        let mut current = vec![0u8; len];
        if let Some(start) = start {
            digits[start] = 1;
            current.copy_from_slice(&rows[start]);
        }
        SpanWalker {
            field,
            rows,
            digits,
            current,
        }
    }

    /// Moves to the next combination; false once every digit has wrapped.
    fn advance(&mut self) -> bool {
        let p = self.field.order() as u8;
        for i in 0..self.digits.len() {
            // Adding the row p times in total returns the contribution to zero,
            // so a wrapping digit needs the same single addition.
            self.field.axpy(&mut self.current, 1, &self.rows[i]);
            self.digits[i] += 1;
            if self.digits[i] < p {
                return true;
            }
            self.digits[i] = 0;
        }
        false
    }

    fn run<F>(&mut self, mut f: F) -> ControlFlow<()>
    where
        F: FnMut(&[u8]) -> ControlFlow<()>,
    {
        loop {
            f(&self.current)?;
            if !self.advance() {
                return ControlFlow::Continue(());
            }
        }
    }
}

/// Canonical row space of `rows` inside GF(p)^`ambient_dim`.
pub fn rref_canonicalize(field: PrimeField, ambient_dim: usize, rows: &[FqVector]) -> Result<Subspace> {
    if let Some(bad) = rows.iter().find(|r| r.field() != field) {
        return Err(Error::InputShape(format!(
            "row over {} mixed into {field}",
            bad.field()
        )));
    }
    Subspace::span(
        field,
        ambient_dim,
        rows.iter().map(|r| r.entries().to_vec()).collect(),
    )
}

pub fn dual_basis(c: &Subspace) -> Subspace {
    c.dual()
}

pub fn symplectic_dual_basis(c: &Subspace) -> Result<Subspace> {
    c.symplectic_dual()
}

/// Visits every vector of GF(p)^n with exactly `w` nonzero entries.
pub fn for_each_vector_of_weight<F>(field: PrimeField, n: usize, w: usize, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[u8]) -> ControlFlow<()>,
{
    if w > n {
        return ControlFlow::Continue(());
    }
    let p = field.order() as u8;
    let mut v = vec![0u8; n];
    for support in (0..n).combinations(w) {
        for &i in &support {
            v[i] = 1;
        }
        loop {
            f(&v)?;
            // odometer over the nonzero values 1..p on the support
            let mut moved = false;
            for &i in &support {
                if v[i] + 1 < p {
                    v[i] += 1;
                    moved = true;
                    break;
                }
                v[i] = 1;
            }
            if !moved {
                break;
            }
        }
        for &i in &support {
            v[i] = 0;
        }
    }
    ControlFlow::Continue(())
}

/// Iterator over all `k`-dimensional subspaces of GF(p)^m, each produced
/// exactly once in canonical form.
pub struct Subspaces {
    field: PrimeField,
    m: usize,
    k: usize,
    pivot_sets: itertools::Combinations<std::ops::Range<usize>>,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<u8>,
    pending: bool,
}

pub fn subspaces(field: PrimeField, m: usize, k: usize) -> Subspaces {
    Subspaces {
        field,
        m,
        k,
        pivot_sets: (0..m).combinations(k),
        pivots: Vec::new(),
        free: Vec::new(),
        digits: Vec::new(),
        pending: false,
    }
}

impl Iterator for Subspaces {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if !self.pending {
            let pivots = self.pivot_sets.next()?;
            self.free = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &pc)| {
                    let pivots = &pivots;
                    (pc + 1..self.m)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            self.digits = vec![0; self.free.len()];
            self.pivots = pivots;
            self.pending = true;
        }
        let mut basis = vec![vec![0u8; self.m]; self.k];
        for (r, &c) in self.pivots.iter().enumerate() {
            basis[r][c] = 1;
        }
        for (&(r, c), &d) in self.free.iter().zip(&self.digits) {
            basis[r][c] = d;
        }
        let out = Subspace {
            field: self.field,
            ambient_dim: self.m,
            basis,
            pivots: self.pivots.clone(),
        };
        let p = self.field.order() as u8;
        self.pending = false;
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < p {
                self.pending = true;
                break;
            }
            *d = 0;
        }
        Some(out)
    }
}
