//! Knot presentations: PD codes, braid words, and direct Seifert matrices.
//!
//! PD convention: each crossing is a tuple `X(a,b,c,d)` of edge labels read
//! counterclockwise starting at the incoming under-strand, so slots 0 and 2
//! carry the under-strand and slots 1 and 3 the over-strand. Edge labels
//! are contiguous `1..=arc_count` and each appears exactly twice.
//!
//! Braid convention: letters are nonzero integers, `|i|` the generator
//! index, sign the crossing sign. The closure must be a knot: the induced
//! permutation of the strands is a single cycle.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::IntMatrix;

/// A validated planar diagram code for a one-component knot diagram.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PdCode {
    crossings: Vec<[u32; 4]>,
    arc_count: u32,
}

impl PdCode {
    pub fn new(crossings: Vec<[u32; 4]>) -> Result<Self> {
        if crossings.is_empty() {
            return Err(Error::Validation("a PD code needs at least one crossing".into()));
        }
        let arc_count = (crossings.len() * 2) as u32;
        let mut seen = vec![0u8; arc_count as usize + 1];
        for x in &crossings {
            for &a in x {
                if a == 0 || a > arc_count {
                    return Err(Error::Validation(format!(
                        "edge label {a} out of range 1..={arc_count}"
                    )));
                }
                seen[a as usize] += 1;
            }
        }
        if let Some(a) = (1..=arc_count).find(|&a| seen[a as usize] != 2) {
            return Err(Error::Validation(format!(
                "edge label {a} appears {} times, expected exactly 2",
                seen[a as usize]
            )));
        }
        let pd = Self { crossings, arc_count };
        let visited = pd.traverse_component();
        if visited != arc_count as usize {
            return Err(Error::Validation(format!(
                "diagram has more than one component ({visited} of {arc_count} edges in the first cycle)"
            )));
        }
        Ok(pd)
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn arc_count(&self) -> u32 {
        self.arc_count
    }

    /// Walk the underlying closed curve; returns how many edges one cycle
    /// visits. Slots 0/2 and 1/3 are the two strands through a crossing.
    fn traverse_component(&self) -> usize {
        // occurrences[a] = the (crossing, slot) pairs where edge a appears
        let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.arc_count as usize + 1];
        for (ci, x) in self.crossings.iter().enumerate() {
            for (si, &a) in x.iter().enumerate() {
                occ[a as usize].push((ci, si));
            }
        }
        let mut visited = vec![false; self.arc_count as usize + 1];
        let start = 1u32;
        let (mut ci, mut si) = occ[start as usize][0];
        let mut count = 0usize;
        loop {
            let through = (si + 2) % 4;
            let next_edge = self.crossings[ci][through];
            if visited[next_edge as usize] {
                break;
            }
            visited[next_edge as usize] = true;
            count += 1;
            let pair = &occ[next_edge as usize];
            let (oc, os) = if pair[0] == (ci, through) { pair[1] } else { pair[0] };
            ci = oc;
            si = os;
        }
        count
    }

    /// Mirror image: reflect each crossing, keeping the strand pairing.
    /// An involution on the tuple level.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|&[a, b, c, d]| [a, d, c, b])
            .collect();
        Self {
            crossings,
            arc_count: self.arc_count,
        }
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.crossings.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "X({},{},{},{})", x[0], x[1], x[2], x[3])?;
        }
        Ok(())
    }
}

/// A braid word whose closure is a knot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::Validation("a braid needs at least 2 strands".into()));
        }
        for &l in &letters {
            if l == 0 {
                return Err(Error::Validation("braid letter 0 is not a generator".into()));
            }
            if l.unsigned_abs() >= strands {
                return Err(Error::Validation(format!(
                    "letter {l} needs at least {} strands, braid has {strands}",
                    l.unsigned_abs() + 1
                )));
            }
        }
        let b = Self { strands, letters };
        let cycles = b.closure_cycles();
        if cycles != 1 {
            return Err(Error::Validation(format!(
                "closure is a {cycles}-component link, not a knot"
            )));
        }
        Ok(b)
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Permutation of strand positions induced by the word.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands as usize).collect();
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize - 1;
            perm.swap(k, k + 1);
        }
        perm
    }

    fn closure_cycles(&self) -> usize {
        let perm = self.permutation();
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        cycles
    }

    pub fn mirror(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().map(|&l| -l).collect(),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

/// Any input the library accepts as the name of a knot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum KnotPresentation {
    Pd(PdCode),
    Braid(BraidWord),
    /// A Seifert matrix accepted as-is.
    SeifertDirect(IntMatrix),
}

/// Parse the `X(a,b,c,d)` wire format, whitespace separated.
pub fn parse_pd(text: &str) -> Result<PdCode> {
    let mut crossings = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if bytes[i] != b'X' {
            return Err(Error::Parse {
                position: i,
                message: format!("expected 'X', found {:?}", bytes[i] as char),
            });
        }
        i += 1;
        if i >= bytes.len() || bytes[i] != b'(' {
            return Err(Error::Parse {
                position: i,
                message: "expected '(' after 'X'".into(),
            });
        }
        i += 1;
        let close = text[i..].find(')').ok_or(Error::Parse {
            position: i,
            message: "unterminated crossing tuple".into(),
        })? + i;
        let inner = &text[i..close];
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse {
                position: i,
                message: format!("crossing tuple has arity {}, expected 4", parts.len()),
            });
        }
        let mut tuple = [0u32; 4];
        for (slot, part) in parts.iter().enumerate() {
            tuple[slot] = part.parse::<u32>().map_err(|_| Error::Parse {
                position: i,
                message: format!("invalid edge label {part:?}"),
            })?;
        }
        crossings.push(tuple);
        i = close + 1;
    }
    PdCode::new(crossings)
}

/// Parse a braid word: optional `N:` strand-count prefix, then signed
/// integers separated by whitespace or commas. Without a prefix the strand
/// count is the largest generator index plus one.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let (strands_text, letters_text) = match text.split_once(':') {
        Some((s, rest)) => (Some(s.trim()), rest),
        None => (None, text),
    };
    let mut letters = Vec::new();
    for tok in letters_text.split(|c: char| c.is_whitespace() || c == ',') {
        if tok.is_empty() {
            continue;
        }
        let l: i32 = tok.parse().map_err(|_| Error::Parse {
            position: 0,
            message: format!("invalid braid letter {tok:?}"),
        })?;
        letters.push(l);
    }
    if letters.is_empty() {
        return Err(Error::Parse {
            position: 0,
            message: "empty braid word".into(),
        })?;
    }
    let strands = match strands_text {
        Some(s) => s.parse::<u32>().map_err(|_| Error::Parse {
            position: 0,
            message: format!("invalid strand count {s:?}"),
        })?,
        None => letters.iter().map(|l| l.unsigned_abs() + 1).max().unwrap_or(2),
    };
    BraidWord::new(strands, letters)
}

/// PD code of the braid closure. Edges are relabeled contiguously in order
/// of first appearance; each crossing contributes two new edges.
pub fn braid_to_pd(b: &BraidWord) -> Result<PdCode> {
    let s = b.strands() as usize;
    let n = b.letters().len();
    // Provisional edge ids: 0..s are the initial strand segments, then two
    // fresh ids per crossing. Union the top of the braid with the bottom.
    let mut parent: Vec<usize> = (0..s + 2 * n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut current: Vec<usize> = (0..s).collect();
    let mut fresh = s;
    let mut tuples: Vec<[usize; 4]> = Vec::with_capacity(n);
    for &l in b.letters() {
        let k = l.unsigned_abs() as usize - 1;
        let (left, right) = (current[k], current[k + 1]);
        let top_right = fresh;
        let top_left = fresh + 1;
        fresh += 2;
        // Tuple starts at the incoming under-strand, counterclockwise.
        if l > 0 {
            tuples.push([right, top_right, top_left, left]);
        } else {
            tuples.push([left, right, top_right, top_left]);
        }
        current[k] = top_left;
        current[k + 1] = top_right;
    }
    for (pos, &top) in current.iter().enumerate() {
        let a = find(&mut parent, top);
        let b = find(&mut parent, pos);
        parent[a] = b;
    }
    let mut label: Vec<u32> = vec![0; s + 2 * n];
    let mut next_label = 1u32;
    let mut crossings = Vec::with_capacity(n);
    for t in &tuples {
        let mut out = [0u32; 4];
        for (slot, &e) in t.iter().enumerate() {
            let root = find(&mut parent, e);
            if label[root] == 0 {
                label[root] = next_label;
                next_label += 1;
            }
            out[slot] = label[root];
        }
        crossings.push(out);
    }
    PdCode::new(crossings)
}

/// Mirror image of any presentation: crossings reflected for PD codes,
/// letters negated for braids, `M -> -M^T` for direct Seifert matrices.
pub fn mirror(k: &KnotPresentation) -> KnotPresentation {
    match k {
        KnotPresentation::Pd(pd) => KnotPresentation::Pd(pd.mirror()),
        KnotPresentation::Braid(b) => KnotPresentation::Braid(b.mirror()),
        KnotPresentation::SeifertDirect(m) => {
            let neg = m
                .transpose()
                .checked_neg()
                .expect("mirror of a validated Seifert matrix cannot overflow");
            KnotPresentation::SeifertDirect(neg)
        }
    }
}

fn smn_matrix(m: i64, n: i64) -> IntMatrix {
    IntMatrix::from_rows(&[vec![m, 1], vec![0, n]]).expect("2x2 shape")
}

fn torus_bidiagonal(p: u64, left: bool) -> IntMatrix {
    let size = (p - 1) as usize;
    let mut m = IntMatrix::zeros(size, size);
    for i in 0..size {
        m[(i, i)] = 1;
        if i + 1 < size {
            m[(i, i + 1)] = 1;
        }
    }
    if left {
        m
    } else {
        m.transpose().checked_neg().expect("small entries")
    }
}

/// Canned presentations used as fixtures: torus knots, the figure-eight,
/// the S(m,n) family, and an unknot braid.
pub fn catalog(name: &str) -> Result<KnotPresentation> {
    if let Some(rest) = name.strip_prefix("S(") {
        if let Some(inner) = rest.strip_suffix(')') {
            if let Some((ms, ns)) = inner.split_once(',') {
                let m: i64 = ms.trim().parse().map_err(|_| Error::UnknownCatalogName(name.into()))?;
                let n: i64 = ns.trim().parse().map_err(|_| Error::UnknownCatalogName(name.into()))?;
                if m.abs() > 100 || n.abs() > 100 {
                    return Err(Error::UnknownCatalogName(name.into()));
                }
                return Ok(KnotPresentation::SeifertDirect(smn_matrix(m, n)));
            }
        }
        return Err(Error::UnknownCatalogName(name.into()));
    }
    match name {
        "3_1L" => Ok(KnotPresentation::SeifertDirect(smn_matrix(1, 1))),
        "3_1R" => Ok(KnotPresentation::SeifertDirect(smn_matrix(-1, -1))),
        "4_1" => Ok(KnotPresentation::SeifertDirect(smn_matrix(-1, 1))),
        "5_1L" => Ok(KnotPresentation::SeifertDirect(torus_bidiagonal(5, true))),
        "5_1R" => Ok(KnotPresentation::SeifertDirect(torus_bidiagonal(5, false))),
        "unknot-braid" => Ok(KnotPresentation::Braid(BraidWord::new(2, vec![1])?)),
        _ => Err(Error::UnknownCatalogName(name.into())),
    }
}

/// Diagram of the genus-1 double twist knot with `m` full twists in one
/// band and `n` in the other: the knot bounding the plumbing of two twisted
/// annuli. `m == 0` or `n == 0` gives an unknot diagram.
pub fn double_twist_pd(m: i64, n: i64) -> PdCode {
    if m == 0 || n == 0 {
        // one-crossing kink
        return PdCode::new(vec![[1, 2, 2, 1]]).expect("kink is valid");
    }
    // Build a rational tangle with 2m east twists then 2n south twists and
    // take its numerator closure. Endpoint edge ids evolve as crossings are
    // appended; a union-find merges the closure identifications.
    let total_crossings = (2 * m.unsigned_abs() + 2 * n.unsigned_abs()) as usize;
    let mut parent: Vec<usize> = (0..4 + 2 * total_crossings).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let (nw, mut ne, mut sw, mut se) = (0usize, 1usize, 2usize, 3usize);
    // the 0-tangle's top strand is nw-ne and its bottom strand sw-se
    parent[1] = 0;
    parent[3] = 2;
    let mut fresh = 4usize;
    let mut tuples: Vec<[usize; 4]> = Vec::new();
    let mut cross = |u_in: usize, v_in: usize, tuples: &mut Vec<[usize; 4]>, fresh: &mut usize, over_first: bool| -> (usize, usize) {
        let u_out = *fresh;
        let v_out = *fresh + 1;
        *fresh += 2;
        // under-strand at slots 0/2, over-strand at slots 1/3
        if over_first {
            tuples.push([v_in, u_in, v_out, u_out]);
        } else {
            tuples.push([u_in, v_in, u_out, v_out]);
        }
        (u_out, v_out)
    };
    // East twist region between the ne and se endpoints.
    for _ in 0..2 * m.unsigned_abs() {
        let (ne2, se2) = cross(ne, se, &mut tuples, &mut fresh, m > 0);
        ne = ne2;
        se = se2;
    }
    // South twist region between the sw and se endpoints.
    for _ in 0..2 * n.unsigned_abs() {
        let (sw2, se2) = cross(sw, se, &mut tuples, &mut fresh, n < 0);
        sw = sw2;
        se = se2;
    }
    // Numerator closure: join nw-ne and sw-se.
    for (a, b) in [(nw, ne), (sw, se)] {
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        parent[ra] = rb;
    }
    let mut label: Vec<u32> = vec![0; 4 + 2 * total_crossings];
    let mut next_label = 1u32;
    let mut crossings = Vec::new();
    for t in &tuples {
        let mut out = [0u32; 4];
        for (slot, &e) in t.iter().enumerate() {
            let root = find(&mut parent, e);
            if label[root] == 0 {
                label[root] = next_label;
                next_label += 1;
            }
            out[slot] = label[root];
        }
        crossings.push(out);
    }
    PdCode::new(crossings).expect("double twist construction yields a knot diagram")
}

/// Parse the `g; row-major integers` text format for a 2g x 2g Seifert
/// matrix given directly.
pub fn parse_seifert_direct(text: &str) -> Result<IntMatrix> {
    let (g_text, rest) = text.split_once(';').ok_or(Error::Parse {
        position: 0,
        message: "expected 'g; entries'".into(),
    })?;
    let g: usize = g_text.trim().parse().map_err(|_| Error::Parse {
        position: 0,
        message: format!("invalid genus {g_text:?}"),
    })?;
    let entries = rest
        .split_whitespace()
        .map(|tok| {
            tok.parse::<i64>().map_err(|_| Error::Parse {
                position: 0,
                message: format!("invalid matrix entry {tok:?}"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let dim = 2 * g;
    if entries.len() != dim * dim {
        return Err(Error::Parse {
            position: 0,
            message: format!("genus {g} needs {} entries, got {}", dim * dim, entries.len()),
        });
    }
    Matrix::new(dim, dim, entries)
}

pub fn format_seifert_direct(m: &IntMatrix) -> String {
    let g = m.rows() / 2;
    let entries: Vec<String> = m.data().iter().map(i64::to_string).collect();
    format!("{g}; {}", entries.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_trefoil_pd() {
        let pd = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        assert_eq!(pd.crossings().len(), 3);
        assert_eq!(pd.arc_count(), 6);
    }

    #[test]
    fn pd_arity_error() {
        let err = parse_pd("X(1,2,3)").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
    }

    #[test]
    fn pd_two_components_rejected() {
        // traversal oracle: each kink closes on itself
        let err = parse_pd("X(1,1,2,2) X(3,3,4,4)").unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err}");
    }

    #[test]
    fn braid_parse_and_permutation_oracle() {
        let b = parse_braid("1 1 1").unwrap();
        assert_eq!(b.strands(), 2);
        // permutation oracle: three transpositions = one transposition = 2-cycle
        assert_eq!(b.permutation(), vec![1, 0]);

        let b = parse_braid("3: 1 2").unwrap();
        assert_eq!(b.permutation(), vec![1, 2, 0]);
    }

    #[test]
    fn braid_multi_component_closures_rejected() {
        // permutation (1 2)(3) has two cycles
        assert!(matches!(parse_braid("3: 1"), Err(Error::Validation(_))));
        // sigma_1 sigma_1^-1 closes to a two-component unlink
        assert!(matches!(parse_braid("1 -1"), Err(Error::Validation(_))));
    }

    #[test]
    fn braid_letter_errors() {
        assert!(parse_braid("0").is_err());
        assert!(matches!(parse_braid("2: 2"), Err(Error::Validation(_))));
        assert!(parse_braid("").is_err());
        assert!(parse_braid("2:").is_err());
    }

    #[test]
    fn braid_to_pd_shapes() {
        let pd = braid_to_pd(&parse_braid("1 1 1").unwrap()).unwrap();
        assert_eq!(pd.crossings().len(), 3);
        assert_eq!(pd.arc_count(), 6);
        let pd = braid_to_pd(&parse_braid("2: 1").unwrap()).unwrap();
        assert_eq!(pd.crossings().len(), 1);
    }

    #[test]
    fn mirror_is_an_involution() {
        let pd = KnotPresentation::Pd(parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap());
        assert_eq!(mirror(&mirror(&pd)), pd);
        let b = KnotPresentation::Braid(parse_braid("1 1 1").unwrap());
        assert_eq!(mirror(&mirror(&b)), b);
        let s = KnotPresentation::SeifertDirect(smn_matrix(1, 1));
        assert_eq!(mirror(&mirror(&s)), s);
    }

    #[test]
    fn mirror_braid_negates_letters() {
        let b = parse_braid("1 1 1").unwrap();
        assert_eq!(b.mirror().letters(), &[-1, -1, -1]);
    }

    #[test]
    fn mirror_seifert_direct_by_hand() {
        // -M^T by hand
        let s = KnotPresentation::SeifertDirect(smn_matrix(1, 1));
        let KnotPresentation::SeifertDirect(m) = mirror(&s) else {
            panic!()
        };
        assert_eq!(m, IntMatrix::from_rows(&[vec![-1, 0], vec![-1, -1]]).unwrap());
    }

    #[test]
    fn catalog_entries() {
        let KnotPresentation::SeifertDirect(m) = catalog("3_1L").unwrap() else {
            panic!()
        };
        assert_eq!(m, smn_matrix(1, 1));
        let KnotPresentation::SeifertDirect(m) = catalog("4_1").unwrap() else {
            panic!()
        };
        assert_eq!(m, smn_matrix(-1, 1));
        let KnotPresentation::SeifertDirect(m) = catalog("5_1L").unwrap() else {
            panic!()
        };
        assert_eq!(m.rows(), 4);
        let KnotPresentation::SeifertDirect(m2) = catalog("S(2,2)").unwrap() else {
            panic!()
        };
        assert_eq!(m2, smn_matrix(2, 2));
        assert!(matches!(catalog("bogus"), Err(Error::UnknownCatalogName(_))));
        assert!(catalog("unknot-braid").is_ok());
    }

    #[test]
    fn round_trip_parse_serialize() {
        let texts = ["X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"];
        for t in texts {
            let pd = parse_pd(t).unwrap();
            assert_eq!(parse_pd(&pd.to_string()).unwrap(), pd);
        }
        for w in ["1 1 1", "3: 1 -2 1 -2", "2: 1"] {
            let b = parse_braid(w).unwrap();
            assert_eq!(parse_braid(&b.to_string()).unwrap(), b);
        }
        let m = smn_matrix(-3, 2);
        assert_eq!(parse_seifert_direct(&format_seifert_direct(&m)).unwrap(), m);
    }

    #[test]
    fn double_twist_pd_is_valid() {
        for m in -3i64..=3 {
            for n in -3i64..=3 {
                let pd = double_twist_pd(m, n);
                assert!(pd.arc_count() >= 2);
            }
        }
    }
}
