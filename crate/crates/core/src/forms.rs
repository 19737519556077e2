//! Homogeneous polynomials over GF(p) in n+1 variables, represented as
//! coefficient vectors over an ordered monomial basis. Products of linear
//! forms, the factor-dropping tuple maps, and span dimensions via rank live
//! here; the statement builders sit on top.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;

use crate::gfp::{FieldElement, FieldMatrix, PrimeModulus};
use crate::numbers::binomial;
use crate::{Error, Result};

/// Ordered index of all degree-d monomials in n+1 variables. The order is
/// graded reverse-lexicographic (descending), fixed so that column indices
/// are reproducible across runs and platforms.
#[derive(Debug)]
pub struct MonomialBasis {
    n: usize,
    d: usize,
    monomials: Vec<Box<[u16]>>,
    index: HashMap<Box<[u16]>, u32>,
}

fn grevlex_desc(a: &[u16], b: &[u16]) -> Ordering {
    // equal total degree assumed; the larger monomial (listed first) is the
    // one whose trailing difference entry is negative
    for k in (0..a.len()).rev() {
        match a[k].cmp(&b[k]) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Less,
            Ordering::Greater => return Ordering::Greater,
        }
    }
    Ordering::Equal
}

impl MonomialBasis {
    pub fn new(n: usize, d: usize) -> Arc<Self> {
        let mut monomials = Vec::new();
        let mut current = vec![0u16; n + 1];
        gen_exponents(&mut monomials, &mut current, 0, d);
        monomials.sort_by(|a, b| grevlex_desc(a, b));
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        let basis = Self {
            n,
            d,
            monomials,
            index,
        };
        debug_assert_eq!(
            num_traits::ToPrimitive::to_usize(&binomial((n + d) as i64, d as i64)),
            Some(basis.size())
        );
        Arc::new(basis)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn size(&self) -> usize {
        self.monomials.len()
    }

    pub fn exponents(&self, i: usize) -> &[u16] {
        &self.monomials[i]
    }

    pub fn index_of(&self, exps: &[u16]) -> Option<usize> {
        self.index.get(exps).map(|&i| i as usize)
    }
}

fn gen_exponents(out: &mut Vec<Box<[u16]>>, current: &mut Vec<u16>, pos: usize, remaining: usize) {
    if pos == current.len() - 1 {
        current[pos] = remaining as u16;
        out.push(current.clone().into_boxed_slice());
        return;
    }
    for e in 0..=remaining {
        current[pos] = e as u16;
        gen_exponents(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

/// All bases of degree 0..=dmax over a fixed n, shared via `Arc`.
pub struct BasisTower {
    n: usize,
    bases: Vec<Arc<MonomialBasis>>,
}

impl BasisTower {
    pub fn new(n: usize, dmax: usize) -> Self {
        Self {
            n,
            bases: (0..=dmax).map(|d| MonomialBasis::new(n, d)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self, d: usize) -> &Arc<MonomialBasis> {
        &self.bases[d]
    }
}

/// A linear form, as its n+1 coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<FieldElement>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<FieldElement>) -> Self {
        Self { coeffs }
    }

    /// The i-th coordinate form x_i.
    pub fn variable(n: usize, i: usize, p: PrimeModulus) -> Self {
        let mut coeffs = vec![p.zero(); n + 1];
        coeffs[i] = p.one();
        Self { coeffs }
    }

    /// The standard basis x_0, ..., x_n of the space of linear forms.
    pub fn full_basis(n: usize, p: PrimeModulus) -> Vec<LinearForm> {
        (0..=n).map(|i| LinearForm::variable(n, i, p)).collect()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// An ordered tuple of linear forms over a common n.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormTuple {
    forms: Vec<LinearForm>,
}

impl FormTuple {
    pub fn new(forms: Vec<LinearForm>) -> Self {
        Self { forms }
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn get(&self, i: usize) -> &LinearForm {
        &self.forms[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LinearForm> {
        self.forms.iter()
    }

    /// Concatenation `self | other`.
    pub fn concat(&self, other: &FormTuple) -> FormTuple {
        let mut forms = self.forms.clone();
        forms.extend(other.forms.iter().cloned());
        FormTuple { forms }
    }
}

/// Drop the j-th factor (1-indexed).
pub fn rho(j: usize, t: &FormTuple) -> Result<FormTuple> {
    if j == 0 || j > t.len() {
        return Err(Error::InvalidParams(format!(
            "rho index {j} out of range 1..={}",
            t.len()
        )));
    }
    let mut forms = t.forms.clone();
    forms.remove(j - 1);
    Ok(FormTuple { forms })
}

/// Draw `count` random nonzero GF(p)-combinations of the given subspace
/// basis. Zero draws are rejected and redrawn; results are deterministic for
/// a fixed rng state.
pub fn generic_linear_forms<R: Rng>(
    subspace_basis: &[LinearForm],
    count: usize,
    p: PrimeModulus,
    rng: &mut R,
) -> Result<FormTuple> {
    if subspace_basis.is_empty() {
        if count > 0 {
            return Err(Error::InvalidParams(
                "cannot draw forms from an empty subspace".into(),
            ));
        }
        return Ok(FormTuple::default());
    }
    let n = subspace_basis[0].n();
    if subspace_basis.iter().any(|f| f.n() != n) {
        return Err(Error::Shape("subspace basis over mixed n".into()));
    }
    let mut forms = Vec::with_capacity(count);
    for _ in 0..count {
        let form = loop {
            let mut coeffs = vec![p.zero(); n + 1];
            for basis_form in subspace_basis {
                let c = FieldElement(rng.gen_range(0..p.get()));
                for (acc, b) in coeffs.iter_mut().zip(basis_form.coeffs()) {
                    *acc = p.add(*acc, p.mul(c, *b));
                }
            }
            let form = LinearForm::new(coeffs);
            if !form.is_zero() {
                break form;
            }
        };
        forms.push(form);
    }
    Ok(FormTuple { forms })
}

/// A homogeneous polynomial as a coefficient vector over a shared basis.
#[derive(Clone, Debug)]
pub struct HomPoly {
    basis: Arc<MonomialBasis>,
    coeffs: Vec<FieldElement>,
}

impl HomPoly {
    pub fn zero(basis: &Arc<MonomialBasis>) -> Self {
        Self {
            basis: basis.clone(),
            coeffs: vec![FieldElement(0); basis.size()],
        }
    }

    /// The constant 1 in degree 0.
    pub fn one(basis0: &Arc<MonomialBasis>, p: PrimeModulus) -> Self {
        debug_assert_eq!(basis0.degree(), 0);
        Self {
            basis: basis0.clone(),
            coeffs: vec![p.one()],
        }
    }

    pub fn from_coeffs(basis: &Arc<MonomialBasis>, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.len() != basis.size() {
            return Err(Error::Shape(format!(
                "{} coefficients for a basis of size {}",
                coeffs.len(),
                basis.size()
            )));
        }
        Ok(Self {
            basis: basis.clone(),
            coeffs,
        })
    }

    pub fn basis(&self) -> &Arc<MonomialBasis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.basis.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &HomPoly, p: PrimeModulus) -> Result<HomPoly> {
        if !same_basis(&self.basis, &other.basis) {
            return Err(Error::MixedBases);
        }
        Ok(HomPoly {
            basis: self.basis.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| p.add(*a, *b))
                .collect(),
        })
    }
}

fn same_basis(a: &Arc<MonomialBasis>, b: &Arc<MonomialBasis>) -> bool {
    Arc::ptr_eq(a, b) || (a.n() == b.n() && a.degree() == b.degree())
}

/// Multiply by a linear form, raising the degree by one. Bilinear in both
/// arguments.
pub fn mul_linear(
    f: &HomPoly,
    l: &LinearForm,
    target: &Arc<MonomialBasis>,
    p: PrimeModulus,
) -> Result<HomPoly> {
    if l.n() != f.basis.n() || target.n() != f.basis.n() {
        return Err(Error::Shape("mixed variable counts".into()));
    }
    if target.degree() != f.degree() + 1 {
        return Err(Error::Shape(format!(
            "target degree {} for a factor of degree {}",
            target.degree(),
            f.degree() + 1
        )));
    }
    let mut out = vec![FieldElement(0); target.size()];
    let mut scratch: Vec<u16> = vec![0; f.basis.n() + 1];
    for (i, c) in f.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let exps = f.basis.exponents(i);
        for (var, lc) in l.coeffs().iter().enumerate() {
            if lc.is_zero() {
                continue;
            }
            scratch.copy_from_slice(exps);
            scratch[var] += 1;
            let j = target
                .index_of(&scratch)
                .expect("shifted exponent is in the target basis");
            out[j] = p.add(out[j], p.mul(*c, *lc));
        }
    }
    Ok(HomPoly {
        basis: target.clone(),
        coeffs: out,
    })
}

/// Multiply by a single monomial (an exponent shift).
pub fn mul_monomial(
    f: &HomPoly,
    exps: &[u16],
    target: &Arc<MonomialBasis>,
) -> Result<HomPoly> {
    let shift_deg: usize = exps.iter().map(|&e| e as usize).sum();
    if target.degree() != f.degree() + shift_deg || target.n() != f.basis.n() {
        return Err(Error::Shape("monomial shift degree mismatch".into()));
    }
    let mut out = vec![FieldElement(0); target.size()];
    let mut scratch: Vec<u16> = vec![0; f.basis.n() + 1];
    for (i, c) in f.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (s, (a, b)) in scratch
            .iter_mut()
            .zip(f.basis.exponents(i).iter().zip(exps))
        {
            *s = a + b;
        }
        let j = target
            .index_of(&scratch)
            .expect("shifted exponent is in the target basis");
        out[j] = *c;
    }
    Ok(HomPoly {
        basis: target.clone(),
        coeffs: out,
    })
}

/// Product of all factors of the tuple; the empty tuple yields the constant 1.
pub fn product(t: &FormTuple, tower: &BasisTower, p: PrimeModulus) -> Result<HomPoly> {
    let mut acc = HomPoly::one(tower.basis(0), p);
    for (k, form) in t.iter().enumerate() {
        acc = mul_linear(&acc, form, tower.basis(k + 1), p)?;
    }
    Ok(acc)
}

/// Product omitting the j-th factor (1-indexed).
pub fn pi(j: usize, t: &FormTuple, tower: &BasisTower, p: PrimeModulus) -> Result<HomPoly> {
    product(&rho(j, t)?, tower, p)
}

/// Dimension of the span of the generators: the rank of the matrix whose rows
/// are their coefficient vectors. All generators must share one basis.
pub fn span_dim(gens: &[HomPoly], p: PrimeModulus) -> Result<usize> {
    let Some(first) = gens.first() else {
        return Ok(0);
    };
    if gens.iter().any(|g| !same_basis(&first.basis, &g.basis)) {
        return Err(Error::MixedBases);
    }
    let rows: Vec<Vec<FieldElement>> = gens.iter().map(|g| g.coeffs.clone()).collect();
    Ok(FieldMatrix::from_rows(p, rows)?.rank())
}
