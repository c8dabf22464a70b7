//! Fox p-colourings and the knot determinant from a diagram.
//!
//! A colouring labels the arcs of the diagram by elements of Z/p so that at
//! each crossing twice the over-strand label equals the sum of the
//! under-strand labels. The over-strand is unbroken at a crossing, so the
//! two over-edges of a PD tuple always share a label; merging them turns
//! the 2n PD edges into the n arcs that actually carry colours.

use std::collections::BTreeMap;

use crate::codec::PdCode;
use crate::error::{Error, Result};
use crate::modp::{self, ModPVector};
use crate::{algebra, IntMatrix};

/// An arc labeling satisfying the colouring rule. Labels are stored per PD
/// edge (both edges of an over-strand carry the arc's label).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coloring {
    p: u64,
    labels: BTreeMap<u32, u64>,
    nontrivial: bool,
}

impl Coloring {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn labels(&self) -> &BTreeMap<u32, u64> {
        &self.labels
    }

    /// True iff at least two distinct labels occur.
    pub fn is_nontrivial(&self) -> bool {
        self.nontrivial
    }
}

/// Merge the two over-strand edges at every crossing. Returns, for each
/// edge id `1..=2n`, the index of its arc, plus the arc count. Arcs are
/// numbered by smallest member edge.
pub(crate) fn arc_classes(d: &PdCode) -> (Vec<usize>, usize) {
    let n_edges = d.arc_count() as usize;
    let mut parent: Vec<usize> = (0..=n_edges).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for x in d.crossings() {
        let a = find(&mut parent, x[1] as usize);
        let b = find(&mut parent, x[3] as usize);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
        }
    }
    let mut arc_index = vec![usize::MAX; n_edges + 1];
    let mut count = 0usize;
    for e in 1..=n_edges {
        let root = find(&mut parent, e);
        if arc_index[root] == usize::MAX {
            arc_index[root] = count;
            count += 1;
        }
        arc_index[e] = arc_index[root];
    }
    (arc_index, count)
}

/// The crossings-by-arcs integer matrix of the colouring rule: one row
/// `2*over - under_in - under_out` per crossing. Row sums are zero.
pub fn coloring_matrix(d: &PdCode) -> IntMatrix {
    let (arc_of, arcs) = arc_classes(d);
    let mut m = IntMatrix::zeros(d.crossings().len(), arcs);
    for (row, x) in d.crossings().iter().enumerate() {
        let over = arc_of[x[1] as usize];
        let u1 = arc_of[x[0] as usize];
        let u2 = arc_of[x[2] as usize];
        m[(row, over)] += 2;
        m[(row, u1)] -= 1;
        m[(row, u2)] -= 1;
    }
    m
}

/// All p-colourings of the diagram: the kernel of the colouring matrix mod
/// p, enumerated as labelings, the constant ones flagged trivial. The count
/// is p^nullity.
pub fn colorings(d: &PdCode, p: u64) -> Result<Vec<Coloring>> {
    modp::require_odd_prime(p)?;
    let (arc_of, _) = arc_classes(d);
    let m = coloring_matrix(d);
    let basis = modp::kernel_mod_p(&m, p)?;
    let k = basis.len() as u32;
    let total = (p as usize)
        .checked_pow(k)
        .ok_or(Error::Validation(format!("too many colourings to enumerate: {p}^{k}")))?;
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut coeffs = Vec::with_capacity(basis.len());
        let mut c = code;
        for _ in 0..basis.len() {
            coeffs.push((c % p as usize) as u64);
            c /= p as usize;
        }
        let mut arc_labels = vec![0u64; m.cols()];
        for (coeff, vec) in coeffs.iter().zip(&basis) {
            for (j, &e) in vec.entries().iter().enumerate() {
                arc_labels[j] = (arc_labels[j] + coeff * e) % p;
            }
        }
        let mut labels = BTreeMap::new();
        for edge in 1..=d.arc_count() {
            labels.insert(edge, arc_labels[arc_of[edge as usize]]);
        }
        let nontrivial = arc_labels.windows(2).any(|w| w[0] != w[1]);
        out.push(Coloring { p, labels, nontrivial });
    }
    Ok(out)
}

/// True iff a nontrivial p-colouring exists. Agrees with `p` dividing
/// [`determinant`].
pub fn is_colorable(d: &PdCode, p: u64) -> Result<bool> {
    modp::require_odd_prime(p)?;
    let m = coloring_matrix(d);
    let rank = modp::rank_mod_p(&m, p)?;
    Ok(m.cols() - rank >= 2)
}

/// The knot determinant: |det| of the colouring matrix with one row and one
/// column deleted. Independent of which row and column are deleted.
pub fn determinant(d: &PdCode) -> Result<u64> {
    let m = coloring_matrix(d);
    if m.rows() != m.cols() {
        return Err(Error::InternalInconsistency(format!(
            "colouring matrix is {}x{}, expected square",
            m.rows(),
            m.cols()
        )));
    }
    let minor = m.minor_matrix(0, 0)?;
    let det = algebra::det_integer(&minor)?;
    Ok(det.unsigned_abs())
}

/// The nontrivial colourings as mod-p vectors indexed by arc (not edge),
/// used to bridge diagrams to kernel data.
pub fn nontrivial_arc_vectors(d: &PdCode, p: u64) -> Result<Vec<ModPVector>> {
    modp::require_odd_prime(p)?;
    let m = coloring_matrix(d);
    let basis = modp::kernel_mod_p(&m, p)?;
    let k = basis.len() as u32;
    let total = (p as usize).pow(k);
    let mut out = Vec::new();
    for code in 0..total {
        let mut coeffs = Vec::with_capacity(basis.len());
        let mut c = code;
        for _ in 0..basis.len() {
            coeffs.push((c % p as usize) as u64);
            c /= p as usize;
        }
        let mut v = vec![0u64; m.cols()];
        for (coeff, vec) in coeffs.iter().zip(&basis) {
            for (j, &e) in vec.entries().iter().enumerate() {
                v[j] = (v[j] + coeff * e) % p;
            }
        }
        if v.windows(2).any(|w| w[0] != w[1]) {
            out.push(ModPVector::new(p, v)?);
        }
    }
    Ok(out)
}
