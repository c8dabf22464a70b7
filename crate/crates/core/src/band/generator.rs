//! Random colourable band presentations for property testing.
//!
//! Sampling order: root colour differences first (per pair, either both
//! zero or both nonzero), then linking, then twists solved band by band so
//! that the colouring is a characteristic vector of the derived matrix.
//! Draws whose index-zero rows cannot be balanced are rejected and retried.

use rand::Rng;

use crate::modp::{inv_mod, reduce_mod_p};
use crate::IntMatrix;

use super::presentation::{Band, BandPair, BandPresentation};

/// Sample a colourable band presentation with genus in 1..=max_genus,
/// |twists| <= twist_bound and |linking| <= link_bound. twist_bound must be
/// at least p so every residue class has a representative in range.
pub fn random_colourable_presentation<R: Rng>(
    p: u64,
    max_genus: usize,
    twist_bound: i64,
    link_bound: i64,
    rng: &mut R,
) -> BandPresentation {
    assert!(twist_bound >= p as i64, "twist bound must cover a full residue system");
    'draw: loop {
        let genus = rng.gen_range(1..=max_genus);
        let n = 2 * genus;

        // colour differences per band; at least one nontrivial pair
        let mut v = vec![0u64; n];
        for k in 0..genus {
            if genus > 1 && rng.gen_ratio(1, 5) {
                continue; // trivially coloured pair
            }
            v[2 * k] = rng.gen_range(1..p);
            v[2 * k + 1] = rng.gen_range(1..p);
        }
        if v.iter().all(|&x| x == 0) {
            continue 'draw;
        }

        // off-pair linking, sparse and symmetric
        let mut linking = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                if i / 2 != j / 2 && rng.gen_ratio(1, 2) {
                    let c = rng.gen_range(-link_bound..=link_bound);
                    linking[(i, j)] = c;
                    linking[(j, i)] = c;
                }
            }
        }

        // twists: solve 2 t_i v_i + v_partner + sum_j L_ij v_j = 0 mod p
        let mut twists = vec![0i64; n];
        for i in 0..n {
            let partner = i ^ 1;
            let mut rest = v[partner] as i64;
            for j in 0..n {
                if j / 2 != i / 2 {
                    rest += linking[(i, j)] * v[j] as i64;
                }
            }
            if v[i] == 0 {
                if reduce_mod_p(rest, p) != 0 {
                    continue 'draw; // index-zero row cannot be balanced
                }
                twists[i] = rng.gen_range(-twist_bound..=twist_bound);
            } else {
                let need = (p - reduce_mod_p(rest, p)) % p;
                let residue = need * inv_mod(2 * v[i] % p, p) % p;
                // all representatives of the residue within the bound
                let mut reps = Vec::new();
                let mut t = -twist_bound + ((residue as i64 - (-twist_bound)).rem_euclid(p as i64));
                while t <= twist_bound {
                    reps.push(t);
                    t += p as i64;
                }
                twists[i] = reps[rng.gen_range(0..reps.len())];
            }
        }

        // root colours realizing the differences
        let bands: Vec<Band> = (0..n)
            .map(|i| {
                let a = rng.gen_range(0..p);
                Band::from_base(p, twists[i], a, (a + v[i]) % p)
            })
            .collect();
        let pairs: Vec<BandPair> = bands
            .chunks(2)
            .map(|w| BandPair { left: w[0], right: w[1] })
            .collect();
        match BandPresentation::new(p, pairs, linking) {
            Ok(b) => return b,
            Err(_) => continue 'draw,
        }
    }
}
