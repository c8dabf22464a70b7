//! The reduction pipeline: unlink the bands, p-reduce the twists, convert
//! the surviving S(m,n) summands to torus summands, and normalize the
//! count. Move legality is enforced at the bookkeeping level; the safety
//! net is that every step must preserve the cu of the whole state, which
//! the trace verifies step by step.

use crate::error::{Error, Result};
use crate::invariant::{self, cu_raw, ClassLabel, ColouredSeifert, ReferenceColouring};
use crate::modp::{inv_mod, reduce_mod_p, ModPVector};
use crate::seifert::Handedness;
use crate::IntMatrix;

use super::presentation::BandPresentation;
use super::tokens::{SmnToken, SummandMultiset, TorusToken};
use super::trace::ReductionTrace;

/// Mutable working copy of a band presentation during unlinking.
struct BandState {
    p: u64,
    twists: Vec<i64>,
    linking: Vec<Vec<i64>>, // full symmetric matrix over all bands
    v: Vec<u64>,
    alive: Vec<bool>, // per pair
    /// cu of everything already moved out of this state; recorded cu
    /// values are offset by this so the trace tracks the global invariant.
    cu_offset: u64,
}

impl BandState {
    fn from_presentation(b: &BandPresentation, cu_offset: u64) -> Self {
        let n = 2 * b.genus();
        let mut linking = vec![vec![0i64; n]; n];
        for (i, row) in linking.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = b.linking()[(i, j)];
            }
        }
        Self {
            p: b.p(),
            twists: (0..n).map(|i| b.band(i).twists).collect(),
            linking,
            v: b.characteristic_vector().entries().to_vec(),
            alive: vec![true; b.genus()],
            cu_offset,
        }
    }

    fn band_alive(&self, i: usize) -> bool {
        self.alive[i / 2]
    }

    fn alive_bands(&self) -> Vec<usize> {
        (0..self.twists.len()).filter(|&i| self.band_alive(i)).collect()
    }

    /// Seifert matrix of the surviving bands.
    fn matrix(&self) -> IntMatrix {
        let idx = self.alive_bands();
        let n = idx.len();
        let mut m = IntMatrix::zeros(n, n);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = if i == j {
                    self.twists[i]
                } else if i / 2 == j / 2 {
                    // in-pair half-twist offset
                    if i % 2 == 0 && j == i + 1 {
                        1
                    } else {
                        0
                    }
                } else {
                    self.linking[i][j]
                };
            }
        }
        m
    }

    fn vector(&self) -> Vec<i64> {
        self.alive_bands().iter().map(|&i| self.v[i] as i64).collect()
    }

    /// Global cu: this state's contribution plus the fixed offset.
    fn cu(&self) -> Result<u64> {
        let own = cu_raw(&self.matrix(), &self.vector(), self.p)?;
        Ok((own + self.cu_offset) % self.p)
    }

    fn digest_string(&self) -> String {
        format!(
            "p={};t={:?};v={:?};L={:?};alive={:?}",
            self.p, self.twists, self.v, self.linking, self.alive
        )
    }

    /// Verify the kernel condition (M + M^T) v = 0 mod p over alive bands.
    fn kernel_ok(&self) -> bool {
        let m = self.matrix();
        let v = self.vector();
        let b = m.symmetrized().expect("bounded entries");
        (0..v.len()).all(|i| {
            let s: i64 = (0..v.len()).map(|j| b[(i, j)] * v[j]).sum();
            s.rem_euclid(self.p as i64) == 0
        })
    }
}

/// Unlink all bands of a coloured band presentation by surgeries that fix
/// cu, delete trivially coloured pairs, and re-cut index-zero bands. The
/// result is one coloured S(m,n) token per surviving pair plus the trace.
pub fn unlink_bands(b: &BandPresentation) -> Result<(Vec<SmnToken>, ReductionTrace)> {
    unlink_bands_with_offset(b, 0)
}

fn unlink_bands_with_offset(
    b: &BandPresentation,
    cu_offset: u64,
) -> Result<(Vec<SmnToken>, ReductionTrace)> {
    let p = b.p();
    let mut st = BandState::from_presentation(b, cu_offset);
    let mut trace = ReductionTrace::new(p);
    let genus = b.genus();

    // Trivially coloured pairs: unlink them from everything (their loops
    // die under the colouring, so the surgeries are free) and cancel the
    // handle.
    for k in 0..genus {
        if !st.alive[k] || st.v[2 * k] != 0 || st.v[2 * k + 1] != 0 {
            continue;
        }
        let before_cu = st.cu()?;
        let before = st.digest_string();
        for band in [2 * k, 2 * k + 1] {
            for j in 0..st.twists.len() {
                st.linking[band][j] = 0;
                st.linking[j][band] = 0;
            }
        }
        st.alive[k] = false;
        debug_assert!(st.kernel_ok());
        trace.push(
            "delete_trivial_pair",
            "trivially coloured handle unlinked and cancelled",
            &before,
            &st.digest_string(),
            before_cu,
            st.cu()?,
        )?;
    }

    // Pairs with exactly one index-zero band: clear that band's twists by
    // framed surgery on its core loop (free, since its boundary strands
    // share a colour), then change the cut system so both bands of the
    // pair carry nonzero index.
    for k in 0..genus {
        if !st.alive[k] {
            continue;
        }
        let (l, r) = (2 * k, 2 * k + 1);
        let (z, nz) = match (st.v[l] == 0, st.v[r] == 0) {
            (true, false) => (l, r),
            (false, true) => (r, l),
            _ => continue,
        };
        if st.twists[z] != 0 {
            let before_cu = st.cu()?;
            let before = st.digest_string();
            st.twists[z] = 0;
            debug_assert!(st.kernel_ok());
            trace.push(
                "twist_clear_zero_index",
                "full twists removed from an index-zero band by framed surgery on its core",
                &before,
                &st.digest_string(),
                before_cu,
                st.cu()?,
            )?;
        }
        // Basis change x_z := x_z + x_nz, valid in-shape because the
        // index-zero band now has zero twists. v_z becomes -v_nz != 0.
        let before_cu = st.cu()?;
        let before = st.digest_string();
        st.twists[nz] += 1;
        for j in 0..st.twists.len() {
            if j / 2 != k {
                st.linking[nz][j] += st.linking[z][j];
                st.linking[j][nz] = st.linking[nz][j];
            }
        }
        st.v[z] = (p - st.v[nz]) % p;
        debug_assert!(st.kernel_ok());
        trace.push(
            "recut",
            "cut system changed: index-zero band slid over its partner",
            &before,
            &st.digest_string(),
            before_cu,
            st.cu()?,
        )?;
    }

    // All surviving bands now have nonzero index; any link between two of
    // them can be removed, paying with twist changes that keep both the
    // colouring and cu.
    let bands = st.alive_bands();
    for (ai, &i) in bands.iter().enumerate() {
        for &j in bands.iter().skip(ai + 1) {
            if i / 2 == j / 2 || st.linking[i][j] == 0 {
                continue;
            }
            let before_cu = st.cu()?;
            let before = st.digest_string();
            let link = st.linking[i][j];
            let (vi, vj) = (st.v[i], st.v[j]);
            debug_assert!(vi != 0 && vj != 0);
            // twist compensation keeping (M + M^T) v = 0 mod p
            let li = reduce_mod_p(link, p);
            let ri = li * vj % p * inv_mod(2 * vi % p, p) % p;
            let rj = li * vi % p * inv_mod(2 * vj % p, p) % p;
            let (ri, rj) = (ri as i64, rj as i64);
            // cu correction: spend the mod-p freedom of the i-band twist
            let delta0 = 2 * (ri * (vi * vi) as i64 + rj * (vj * vj) as i64
                - link * (vi * vj) as i64);
            debug_assert_eq!(delta0.rem_euclid(p as i64), 0);
            let excess = reduce_mod_p(delta0 / p as i64, p);
            let ki = (p - excess) % p * inv_mod(2 * vi % p * vi % p, p) % p;
            st.twists[i] += ri + (p * ki) as i64;
            st.twists[j] += rj;
            st.linking[i][j] = 0;
            st.linking[j][i] = 0;
            debug_assert!(st.kernel_ok());
            let (move_name, rule) = if index_of(st.v[i], p) == index_of(st.v[j], p) {
                (
                    "unlink_equal_index",
                    "bands of equal index unlinked by one encircling surgery",
                )
            } else {
                (
                    "unlink_unequal_index",
                    "bands of unequal nonzero index unlinked by a coprime twist combination",
                )
            };
            trace.push(move_name, rule, &before, &st.digest_string(), before_cu, st.cu()?)?;
        }
    }

    // Split into summands: stepless bookkeeping once nothing links.
    let mut tokens = Vec::new();
    for k in 0..genus {
        if st.alive[k] {
            tokens.push(SmnToken::new(
                p,
                st.twists[2 * k],
                st.twists[2 * k + 1],
                (st.v[2 * k], st.v[2 * k + 1]),
            )?);
        }
    }
    Ok((tokens, trace))
}

fn index_of(v: u64, p: u64) -> u64 {
    v.min(p - v)
}

/// The torus token whose cu is `target`, preferring left-handed tokens.
fn token_with_cu(p: u64, target: u64) -> Result<TorusToken> {
    for handedness in [Handedness::Left, Handedness::Right] {
        for orbit in 1..=(p - 1) / 2 {
            let t = TorusToken::new(p, handedness, orbit)?;
            if t.cu(p) == target {
                return Ok(t);
            }
        }
    }
    Err(Error::InternalInconsistency(format!(
        "no torus summand with cu = {target} mod {p}"
    )))
}

/// Reduce the twist counts of a coloured S(m,n) summand into
/// [-(p-1)/2, (p-1)/2], trading each batch of p full twists for torus
/// summands chosen so that cu of the whole multiset is unchanged.
pub fn twist_reduce(s: &SmnToken) -> Result<(SmnToken, Vec<TorusToken>, ReductionTrace)> {
    twist_reduce_with_offset(s, 0)
}

fn twist_reduce_with_offset(
    s: &SmnToken,
    cu_offset: u64,
) -> Result<(SmnToken, Vec<TorusToken>, ReductionTrace)> {
    let p = s.p;
    if p != 3 && p != 5 {
        return Err(Error::Validation(format!(
            "twist reduction is defined for p in {{3, 5}}, got {p}"
        )));
    }
    let half = ((p - 1) / 2) as i64;
    let mut token = *s;
    let mut emitted: Vec<TorusToken> = Vec::new();
    let mut trace = ReductionTrace::new(p);
    let rule = if p == 3 {
        "three full twists traded for a trefoil summand"
    } else {
        "five full twists traded for two torus summands"
    };
    let state_string = |t: &SmnToken, em: &[TorusToken]| -> String {
        let toks: Vec<String> = em.iter().map(|x| x.to_string()).collect();
        format!("{t} + [{}]", toks.join(","))
    };
    let total_cu = |t: &SmnToken, em: &[TorusToken]| -> u64 {
        let mut acc = (t.cu() + cu_offset) % p;
        for x in em {
            acc = (acc + x.cu(p)) % p;
        }
        acc
    };

    for band in 0..2usize {
        loop {
            let twists = if band == 0 { token.m } else { token.n };
            if (-half..=half).contains(&twists) {
                break;
            }
            let delta: i64 = if twists > half { -(p as i64) } else { p as i64 };
            let before_cu = total_cu(&token, &emitted);
            let before = state_string(&token, &emitted);
            let vhat = if band == 0 { token.v.0 } else { token.v.1 };
            // cu of the summand changes by 2 (delta/p) vhat^2; the appended
            // tokens must supply the opposite.
            let shift = reduce_mod_p(2 * (delta / p as i64) * (vhat * vhat) as i64, p);
            let need_total = (p - shift) % p;
            let copies = (p - 1) / 2; // 1 for p=3, 2 for p=5
            let each = need_total * inv_mod(copies, p) % p;
            let torus = token_with_cu(p, each)?;
            let (m, n) = if band == 0 {
                (token.m + delta, token.n)
            } else {
                (token.m, token.n + delta)
            };
            token = SmnToken::new(p, m, n, token.v)?;
            for _ in 0..copies {
                emitted.push(torus);
            }
            trace.push(
                "p_twist_reduction",
                rule,
                &before,
                &state_string(&token, &emitted),
                before_cu,
                total_cu(&token, &emitted),
            )?;
        }
    }
    Ok((token, emitted, trace))
}

/// Convert a twist-reduced coloured S(m,n) summand to its torus-summand
/// multiset. Colour-orbit tags are resolved by matching cu.
pub fn smn_to_torus(s: &SmnToken) -> Result<SummandMultiset> {
    let p = s.p;
    let half = ((p - 1) / 2) as i64;
    if s.m.abs() > half || s.n.abs() > half {
        return Err(Error::Validation(format!(
            "S({},{}) is not twist-reduced for p = {p}",
            s.m, s.n
        )));
    }
    if (4 * s.m * s.n - 1).rem_euclid(p as i64) != 0 {
        return Err(Error::NotColorable {
            p,
            reason: format!("S({},{}) has no nontrivial colouring", s.m, s.n),
        });
    }
    let cu_in = s.cu();
    let candidates: Vec<Vec<(Handedness, u64, u64)>> = match (p, s.m, s.n) {
        (3, 1, 1) => vec![vec![(Handedness::Left, 1, 1)]],
        (3, -1, -1) => vec![vec![(Handedness::Right, 1, 1)]],
        // the two orbit assignments of each p = 5 decomposition
        (5, -1, 1) => vec![
            vec![(Handedness::Left, 2, 1), (Handedness::Left, 1, 4)],
            vec![(Handedness::Left, 1, 1), (Handedness::Left, 2, 4)],
        ],
        (5, 1, -1) => vec![
            vec![(Handedness::Right, 2, 1), (Handedness::Right, 1, 4)],
            vec![(Handedness::Right, 1, 1), (Handedness::Right, 2, 4)],
        ],
        (5, 2, 2) => vec![
            vec![(Handedness::Left, 1, 2), (Handedness::Left, 2, 4)],
            vec![(Handedness::Left, 2, 2), (Handedness::Left, 1, 4)],
        ],
        (5, -2, -2) => vec![
            vec![(Handedness::Right, 1, 2), (Handedness::Right, 2, 4)],
            vec![(Handedness::Right, 2, 2), (Handedness::Right, 1, 4)],
        ],
        _ => {
            return Err(Error::InternalInconsistency(format!(
                "no torus decomposition table entry for S({},{}) mod {p}",
                s.m, s.n
            )))
        }
    };
    for cand in candidates {
        let mut ms = SummandMultiset::new(p)?;
        for (h, orbit, count) in cand {
            ms.insert(TorusToken::new(p, h, orbit)?, count);
        }
        if ms.cu() == cu_in {
            return Ok(ms);
        }
    }
    Err(Error::InternalInconsistency(format!(
        "no cu-consistent torus decomposition for {s}"
    )))
}

/// Convert every torus summand to copies of the reference left-hand torus
/// knot and reduce the total into 1..=p.
pub fn canonicalize_counts(ms: &SummandMultiset) -> Result<ClassLabel> {
    let p = ms.p();
    if p != 3 && p != 5 {
        return Err(Error::Validation(format!(
            "count normalization is defined for p in {{3, 5}}, got {p}"
        )));
    }
    if !ms.has_nontrivial() {
        return Err(Error::EmptyMultiset);
    }
    let total = ms.reference_total();
    let n = ((total - 1) % p as u128) as u64 + 1;
    let (_, v_ref) = invariant::reference_torus(p)?;
    Ok(ClassLabel {
        p,
        n,
        conjectural: false,
        reference: ReferenceColouring {
            p,
            v_ref: v_ref.entries().to_vec(),
        },
    })
}

/// The full pipeline: unlink, twist-reduce, decompose, canonicalize. The
/// trace tracks the cu of the whole state at every step, and the final
/// class is checked against the invariant-side classification of the
/// input's derived Seifert data.
pub fn reduce(b: &BandPresentation) -> Result<(ClassLabel, ReductionTrace)> {
    let p = b.p();
    if p != 3 && p != 5 {
        return Err(Error::Validation(format!(
            "the reduction pipeline is defined for p in {{3, 5}}, got {p}"
        )));
    }
    let v = b.characteristic_vector();
    if v.is_zero() {
        return Err(Error::NotColorable {
            p,
            reason: "the presentation is trivially coloured".into(),
        });
    }
    let global_cu = cu_raw(&b.seifert_matrix(), &v.lift(), p)?;
    let mut trace = ReductionTrace::new(p);

    let (smn_tokens, unlink_trace) = unlink_bands_with_offset(b, 0)?;
    trace.extend(unlink_trace)?;

    let mut multiset = SummandMultiset::new(p)?;
    let mut reduced: Vec<SmnToken> = Vec::new();
    for (i, token) in smn_tokens.iter().enumerate() {
        // cu of everything outside this token while it is being reduced
        let mut offset = multiset.cu();
        for other in smn_tokens.iter().skip(i + 1) {
            offset = (offset + other.cu()) % p;
        }
        let (small, emitted, t) = twist_reduce_with_offset(token, offset)?;
        trace.extend(t)?;
        for e in emitted {
            multiset.insert(e, 1);
        }
        reduced.push(small);
    }

    for (i, token) in reduced.iter().enumerate() {
        let before_cu = {
            let mut acc = multiset.cu();
            for t in reduced.iter().skip(i) {
                acc = (acc + t.cu()) % p;
            }
            acc
        };
        let before = format!("{token} + {multiset}");
        let ms = smn_to_torus(token)?;
        multiset = multiset.union(&ms)?;
        let after_cu = {
            let mut acc = multiset.cu();
            for t in reduced.iter().skip(i + 1) {
                acc = (acc + t.cu()) % p;
            }
            acc
        };
        trace.push(
            "torus_decomposition",
            "reduced summand rewritten as coloured torus summands",
            &before,
            &format!("{multiset}"),
            before_cu,
            after_cu,
        )?;
    }

    let before = format!("{multiset}");
    let before_cu = multiset.cu();
    let label = canonicalize_counts(&multiset)?;
    // the canonical class must still carry the same cu
    let class_cu = label.n * (p - 1) % p;
    trace.push(
        "count_reduction",
        "summand count reduced modulo p against the reference torus knot",
        &before,
        &format!("{}x reference", label.n),
        before_cu,
        class_cu,
    )?;

    if class_cu != global_cu {
        return Err(Error::InternalInconsistency(format!(
            "pipeline cu {class_cu} disagrees with input cu {global_cu}"
        )));
    }
    let direct = invariant::classify(&ColouredSeifert::new(b.seifert_data(), p, v)?)?;
    if direct.n != label.n {
        return Err(Error::InternalInconsistency(format!(
            "reducer class {} disagrees with invariant class {}",
            label.n, direct.n
        )));
    }
    Ok((label, trace))
}
