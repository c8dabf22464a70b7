//! The band-calculus state: a disc with 2g bands in pairs.
//!
//! Each band carries an integer count of full twists and four root colours
//! (a, b, c, d): the Z/p labels of the arcs where the band meets the disc,
//! left to right at each end. The colour difference across a band is
//! constant along it, so min(|a-b|, p-|a-b|) = min(|d-c|, p-|c-d|); that
//! number is the band's index. Distinct bands may link; linking counts sit
//! in a symmetric matrix with zero diagonal and zero within a pair (the
//! in-pair geometry is the fixed single half-twist offset).
//!
//! The derived Seifert matrix M has the twists on the diagonal, the block
//! [[., 1], [0, .]] within each pair, and the linking counts elsewhere;
//! the derived characteristic vector v has v_i = b_i - a_i mod p and must
//! satisfy (M + M^T) v = 0 mod p.

use crate::error::{Error, Result};
use crate::modp::{self, reduce_mod_p, ModPVector};
use crate::seifert::{Provenance, SeifertData};
use crate::IntMatrix;

/// One band: full-twist count and root colours (a, b, c, d).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Band {
    pub twists: i64,
    pub colours: [u64; 4],
}

impl Band {
    /// Root colours from the attachment pair (a, b): the far end follows
    /// by propagating through the twists.
    pub fn from_base(p: u64, twists: i64, a: u64, b: u64) -> Self {
        let delta = (b + p - a % p) % p;
        let c = (a + reduce_mod_p(2 * twists, p) * delta) % p;
        let d = (c + delta) % p;
        Self {
            twists,
            colours: [a % p, b % p, c, d],
        }
    }

    /// Signed colour difference b - a mod p; the band's contribution to the
    /// characteristic vector.
    pub fn delta(&self, p: u64) -> u64 {
        (self.colours[1] + p - self.colours[0] % p) % p
    }

    /// The index |A|: the unsigned colour difference.
    pub fn index(&self, p: u64) -> u64 {
        let d = self.delta(p);
        d.min(p - d)
    }

    fn check(&self, p: u64) -> Result<()> {
        for &c in &self.colours {
            if c >= p {
                return Err(Error::Validation(format!("colour {c} out of range mod {p}")));
            }
        }
        let [a, b, c, d] = self.colours;
        let ab = {
            let x = (b + p - a) % p;
            x.min(p - x % p) % p
        };
        let cd = {
            let x = (d + p - c) % p;
            x.min(p - x % p) % p
        };
        if ab != cd {
            return Err(Error::Validation(format!(
                "index mismatch along band: |a-b| gives {ab}, |c-d| gives {cd}"
            )));
        }
        Ok(())
    }
}

/// A pair of bands forming one genus-1 handle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BandPair {
    pub left: Band,
    pub right: Band,
}

/// A coloured band presentation of genus g: g band pairs plus linking.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BandPresentation {
    p: u64,
    pairs: Vec<BandPair>,
    /// Symmetric 2g x 2g linking matrix; nonzero only between different pairs.
    linking: IntMatrix,
}

impl BandPresentation {
    pub fn new(p: u64, pairs: Vec<BandPair>, linking: IntMatrix) -> Result<Self> {
        modp::require_odd_prime(p)?;
        if pairs.is_empty() {
            return Err(Error::Validation("a band presentation needs at least one pair".into()));
        }
        let n = 2 * pairs.len();
        if linking.rows() != n || linking.cols() != n {
            return Err(Error::Dimension(format!(
                "linking matrix must be {n}x{n}, got {}x{}",
                linking.rows(),
                linking.cols()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if linking[(i, j)] != linking[(j, i)] {
                    return Err(Error::Validation("linking matrix is not symmetric".into()));
                }
                if (i == j || i / 2 == j / 2) && linking[(i, j)] != 0 {
                    return Err(Error::Validation(
                        "linking matrix must vanish on the diagonal and within pairs".into(),
                    ));
                }
            }
        }
        for pair in &pairs {
            pair.left.check(p)?;
            pair.right.check(p)?;
        }
        let bp = Self { p, pairs, linking };
        // the derived colouring must be a characteristic vector
        let b = bp.seifert_matrix().symmetrized()?;
        let v = bp.characteristic_vector();
        if !modp::mul_mod_p(&b, &v)?.is_zero() {
            return Err(Error::Validation(
                "root colours are inconsistent with twists and linking: (M + M^T) v != 0 mod p".into(),
            ));
        }
        Ok(bp)
    }

    /// Band presentation of S(m,n) with its induced colouring, the genus-1
    /// base case. Errors if S(m,n) is not p-colourable.
    pub fn smn_form(p: u64, m: i64, n: i64) -> Result<Self> {
        modp::require_odd_prime(p)?;
        if (4 * m * n - 1).rem_euclid(p as i64) != 0 {
            return Err(Error::NotColorable {
                p,
                reason: format!("S({m},{n}) has 4mn - 1 = {} not divisible by {p}", 4 * m * n - 1),
            });
        }
        // kernel of [[2m, 1], [1, 2n]]: v = (1, -2m)
        let v_left = 1u64;
        let v_right = reduce_mod_p(-2 * m, p);
        let left = Band::from_base(p, m, 0, v_left);
        let right = Band::from_base(p, n, 0, v_right);
        Self::new(p, vec![BandPair { left, right }], IntMatrix::zeros(2, 2))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn genus(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[BandPair] {
        &self.pairs
    }

    pub fn linking(&self) -> &IntMatrix {
        &self.linking
    }

    pub fn band(&self, i: usize) -> &Band {
        let pair = &self.pairs[i / 2];
        if i % 2 == 0 {
            &pair.left
        } else {
            &pair.right
        }
    }

    /// Diagonal = twists, in-pair block [[., 1], [0, .]], linking elsewhere.
    pub fn seifert_matrix(&self) -> IntMatrix {
        let n = 2 * self.pairs.len();
        let mut m = IntMatrix::zeros(n, n);
        for (k, pair) in self.pairs.iter().enumerate() {
            m[(2 * k, 2 * k)] = pair.left.twists;
            m[(2 * k + 1, 2 * k + 1)] = pair.right.twists;
            m[(2 * k, 2 * k + 1)] = 1;
        }
        for i in 0..n {
            for j in 0..n {
                if i / 2 != j / 2 {
                    m[(i, j)] = self.linking[(i, j)];
                }
            }
        }
        m
    }

    pub fn seifert_data(&self) -> SeifertData {
        SeifertData::new(self.seifert_matrix(), Provenance::Direct)
            .expect("band presentations always derive valid Seifert matrices")
    }

    /// v_i = signed colour difference of band i.
    pub fn characteristic_vector(&self) -> ModPVector {
        let entries: Vec<u64> = (0..2 * self.pairs.len())
            .map(|i| self.band(i).delta(self.p))
            .collect();
        ModPVector::new(self.p, entries).expect("p validated")
    }

    /// Compact text form: `p; twists; colour pairs (a,b per band); links`.
    pub fn to_text(&self) -> String {
        let n = 2 * self.pairs.len();
        let twists: Vec<String> = (0..n).map(|i| self.band(i).twists.to_string()).collect();
        let colours: Vec<String> = (0..n)
            .map(|i| format!("{},{}", self.band(i).colours[0], self.band(i).colours[1]))
            .collect();
        let mut links = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.linking[(i, j)] != 0 {
                    links.push(format!("{},{},{}", i, j, self.linking[(i, j)]));
                }
            }
        }
        format!(
            "{}; {}; {}; {}",
            self.p,
            twists.join(" "),
            colours.join(" "),
            links.join(" ")
        )
    }

    /// Parse the `to_text` format.
    pub fn from_text(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(';').map(str::trim).collect();
        if parts.len() < 3 {
            return Err(Error::Parse {
                position: 0,
                message: "expected 'p; twists; colours[; links]'".into(),
            });
        }
        let p: u64 = parts[0].parse().map_err(|_| Error::Parse {
            position: 0,
            message: format!("invalid modulus {:?}", parts[0]),
        })?;
        let twists = parts[1]
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>().map_err(|_| Error::Parse {
                    position: 0,
                    message: format!("invalid twist count {t:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if twists.is_empty() || twists.len() % 2 != 0 {
            return Err(Error::Parse {
                position: 0,
                message: format!("need an even positive number of bands, got {}", twists.len()),
            });
        }
        let colour_pairs = parts[2]
            .split_whitespace()
            .map(|t| {
                let (a, b) = t.split_once(',').ok_or(Error::Parse {
                    position: 0,
                    message: format!("colour pair {t:?} must be 'a,b'"),
                })?;
                let a: u64 = a.parse().map_err(|_| Error::Parse {
                    position: 0,
                    message: format!("invalid colour {a:?}"),
                })?;
                let b: u64 = b.parse().map_err(|_| Error::Parse {
                    position: 0,
                    message: format!("invalid colour {b:?}"),
                })?;
                Ok((a, b))
            })
            .collect::<Result<Vec<_>>>()?;
        if colour_pairs.len() != twists.len() {
            return Err(Error::Parse {
                position: 0,
                message: "one colour pair per band required".into(),
            });
        }
        let n = twists.len();
        let mut linking = IntMatrix::zeros(n, n);
        if parts.len() > 3 {
            for item in parts[3].split_whitespace() {
                let fields: Vec<&str> = item.split(',').collect();
                if fields.len() != 3 {
                    return Err(Error::Parse {
                        position: 0,
                        message: format!("link entry {item:?} must be 'i,j,count'"),
                    });
                }
                let i: usize = fields[0].parse().map_err(|_| Error::Parse {
                    position: 0,
                    message: format!("invalid band index {:?}", fields[0]),
                })?;
                let j: usize = fields[1].parse().map_err(|_| Error::Parse {
                    position: 0,
                    message: format!("invalid band index {:?}", fields[1]),
                })?;
                let c: i64 = fields[2].parse().map_err(|_| Error::Parse {
                    position: 0,
                    message: format!("invalid link count {:?}", fields[2]),
                })?;
                if i >= n || j >= n {
                    return Err(Error::Parse {
                        position: 0,
                        message: format!("band index out of range in {item:?}"),
                    });
                }
                linking[(i, j)] = c;
                linking[(j, i)] = c;
            }
        }
        let bands: Vec<Band> = twists
            .iter()
            .zip(&colour_pairs)
            .map(|(&t, &(a, b))| Band::from_base(p, t, a, b))
            .collect();
        let pairs = bands
            .chunks(2)
            .map(|w| BandPair { left: w[0], right: w[1] })
            .collect();
        Self::new(p, pairs, linking)
    }
}
