use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exactalg::{CochainElem, RingShape};
use crate::scalar::Scalar;

/// How a free module was built, so elements can be read back as maps or
/// tensors.
#[derive(Clone, Debug, PartialEq)]
pub enum Structure {
    Plain,
    /// Generators `phi_ij : w_i -> w'_j`, index `i * dst.rank() + j`.
    Hom { src: Arc<FreeModule>, dst: Arc<FreeModule> },
    /// Generators are tuples of factor generators, first factor most
    /// significant.
    Tensor { factors: Vec<Arc<FreeModule>> },
}

/// Free graded module over the coefficient ring of `shape`, with
/// homogeneous generators.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeModule {
    shape: RingShape,
    degrees: Vec<i32>,
    labels: Vec<String>,
    structure: Structure,
}

impl FreeModule {
    pub fn new(shape: RingShape, degrees: Vec<i32>, labels: Vec<String>) -> Self {
        assert_eq!(degrees.len(), labels.len());
        FreeModule { shape, degrees, labels, structure: Structure::Plain }
    }

    pub fn unit(shape: RingShape) -> Self {
        Self::new(shape, vec![0], vec!["1".into()])
    }

    pub fn hom(src: &Arc<FreeModule>, dst: &Arc<FreeModule>) -> Self {
        assert_eq!(src.shape, dst.shape);
        let mut degrees = Vec::with_capacity(src.rank() * dst.rank());
        let mut labels = Vec::with_capacity(src.rank() * dst.rank());
        for i in 0..src.rank() {
            for j in 0..dst.rank() {
                degrees.push(dst.degree(j) - src.degree(i));
                labels.push(format!("[{}->{}]", src.label(i), dst.label(j)));
            }
        }
        FreeModule { shape: src.shape, degrees, labels, structure: Structure::Hom { src: src.clone(), dst: dst.clone() } }
    }

    pub fn tensor(shape: RingShape, factors: &[Arc<FreeModule>]) -> Self {
        let mut degrees = vec![0];
        let mut labels = vec![String::new()];
        for f in factors {
            assert_eq!(f.shape, shape);
            let mut d2 = Vec::with_capacity(degrees.len() * f.rank());
            let mut l2 = Vec::with_capacity(degrees.len() * f.rank());
            for (d, l) in degrees.iter().zip(&labels) {
                for j in 0..f.rank() {
                    d2.push(d + f.degree(j));
                    l2.push(if l.is_empty() { f.label(j).to_string() } else { format!("{}(x){}", l, f.label(j)) });
                }
            }
            degrees = d2;
            labels = l2;
        }
        if factors.is_empty() {
            labels = vec!["1".into()];
        }
        FreeModule { shape, degrees, labels, structure: Structure::Tensor { factors: factors.to_vec() } }
    }

    pub fn shape(&self) -> RingShape {
        self.shape
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn hom_parts(&self) -> Option<(&Arc<FreeModule>, &Arc<FreeModule>)> {
        match &self.structure {
            Structure::Hom { src, dst } => Some((src, dst)),
            _ => None,
        }
    }

    pub fn tensor_factors(&self) -> Option<&[Arc<FreeModule>]> {
        match &self.structure {
            Structure::Tensor { factors } => Some(factors),
            _ => None,
        }
    }

    /// Tensor generator index from a tuple of factor indices.
    pub fn tuple_index(&self, tuple: &[usize]) -> usize {
        let factors = self.tensor_factors().expect("tensor module");
        assert_eq!(tuple.len(), factors.len());
        tuple.iter().zip(factors).fold(0, |acc, (&i, f)| acc * f.rank() + i)
    }

    pub fn index_tuple(&self, mut idx: usize) -> Vec<usize> {
        let factors = self.tensor_factors().expect("tensor module");
        let mut out = vec![0; factors.len()];
        for (slot, f) in factors.iter().enumerate().rev() {
            out[slot] = idx % f.rank();
            idx /= f.rank();
        }
        out
    }

    pub fn gen<F: Scalar>(&self, i: usize) -> ModElem<F> {
        let mut e = ModElem::zero(self);
        e.coeffs[i] = CochainElem::one(self.shape.nvars);
        e
    }

    /// Monomial multiples of generators: a basis over the scalars when the
    /// chart is a point.
    pub fn basis_elements<F: Scalar>(&self, xdeg: u32) -> Vec<ModElem<F>> {
        let monos = self.shape.monomials::<F>(xdeg);
        let mut out = Vec::with_capacity(monos.len() * self.rank());
        for i in 0..self.rank() {
            for m in &monos {
                let mut e = ModElem::zero(self);
                e.coeffs[i] = m.clone();
                out.push(e);
            }
        }
        out
    }
}

/// Element `sum_i c_i w_i` of a free module, coefficients on the left.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModElem<F> {
    pub coeffs: Vec<CochainElem<F>>,
}

impl<F: Scalar> ModElem<F> {
    pub fn zero(module: &FreeModule) -> Self {
        ModElem { coeffs: vec![CochainElem::zero(module.shape.nvars); module.rank()] }
    }

    pub fn from_coeffs(coeffs: Vec<CochainElem<F>>) -> Self {
        ModElem { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        debug_assert_eq!(self.coeffs.len(), other.coeffs.len());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                a.add_assign_ref(b);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(&other.neg());
        out
    }

    pub fn neg(&self) -> Self {
        ModElem { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn scale(&self, s: &F) -> Self {
        ModElem { coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect() }
    }

    /// `f * self` for a ring element `f`.
    pub fn lmul(&self, f: &CochainElem<F>) -> Self {
        ModElem { coeffs: self.coeffs.iter().map(|c| if c.is_zero() { c.clone() } else { f.mul(c) }).collect() }
    }

    /// Total degree of each nonzero `(monomial, generator)` term, grouped.
    pub fn parts_by_degree(&self, module: &FreeModule) -> BTreeMap<i32, ModElem<F>> {
        let mut out: BTreeMap<i32, ModElem<F>> = BTreeMap::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            for (m, p) in c.terms() {
                let d = m.degree() as i32 + module.degree(i);
                let e = out.entry(d).or_insert_with(|| ModElem::zero(module));
                e.coeffs[i].add_term(*m, p.clone());
            }
        }
        out
    }

    /// `Some(d)` if homogeneous of degree `d`, `None` if inhomogeneous or zero.
    pub fn degree(&self, module: &FreeModule) -> Option<i32> {
        let mut deg = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            for (m, _) in c.terms() {
                let d = m.degree() as i32 + module.degree(i);
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    pub fn display(&self, module: &FreeModule) -> String {
        let parts: Vec<String> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| format!("{} {}", c, module.label(i))).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
