//! scratch: fit the cross-column linking table against diagram determinants
use dkt_core::algebra::det_integer;
use dkt_core::codec::{braid_to_pd, parse_braid, BraidWord};
use dkt_core::coloring::determinant;
use dkt_core::IntMatrix;

struct Knobs {
    e: i64,        // global intersection orientation
    x_gf: i64,     // lk(g, d+) when gamma starts first (pair (x, x - e))
    x_df: i64,     // lk(g, d+) when delta starts first (pair (x, x + e))
    lam_gin: i64,  // symmetric value when gamma nested inside delta
    lam_din: i64,  // symmetric value when delta nested inside gamma
}

fn build(b: &BraidWord, k: &Knobs) -> IntMatrix {
    let strands = b.strands() as usize;
    let letters = b.letters();
    let rank = letters.len() + 1 - strands;
    struct Lp {
        col: usize,
        pos: (usize, usize),
        sign: (i64, i64),
    }
    let mut loops: Vec<Lp> = Vec::with_capacity(rank);
    for col in 0..strands - 1 {
        let in_col: Vec<(usize, i64)> = letters
            .iter()
            .enumerate()
            .filter(|(_, &l)| l.unsigned_abs() as usize == col + 1)
            .map(|(i, &l)| (i, if l > 0 { 1i64 } else { -1 }))
            .collect();
        for w in in_col.windows(2) {
            loops.push(Lp {
                col,
                pos: (w[0].0, w[1].0),
                sign: (w[0].1, w[1].1),
            });
        }
    }
    let mut m = IntMatrix::zeros(rank, rank);
    for (i, li) in loops.iter().enumerate() {
        m[(i, i)] = (li.sign.0 + li.sign.1) / 2;
        for (j, lj) in loops.iter().enumerate().skip(i + 1) {
            if lj.col == li.col {
                if lj.pos.0 == li.pos.1 {
                    let eps = li.sign.1;
                    m[(i, j)] = (eps + 1) / 2;
                    m[(j, i)] = (eps - 1) / 2;
                }
            } else if lj.col == li.col + 1 {
                let (a, bb) = li.pos;
                let (c, d) = lj.pos;
                if a < c && c < bb && bb < d {
                    m[(i, j)] = k.x_gf;
                    m[(j, i)] = k.x_gf - k.e;
                } else if c < a && a < d && d < bb {
                    m[(i, j)] = k.x_df;
                    m[(j, i)] = k.x_df + k.e;
                } else if c < a && bb < d {
                    m[(i, j)] = k.lam_gin;
                    m[(j, i)] = k.lam_gin;
                } else if a < c && d < bb {
                    m[(i, j)] = k.lam_din;
                    m[(j, i)] = k.lam_din;
                }
            }
        }
    }
    m
}

fn main() {
    let mut words: Vec<BraidWord> = [
        "1 1 1",
        "1 1 1 1 1",
        "1 -2 1 -2",
        "3: 1 1 1 2 2 2",
        "3: 1 2 1 2",
        "3: 1 2 1 2 1 2 1 2",
        "3: -1 -2 -1 -2 -1 -2 -1 -2",
        "3: 1 1 1 -2",
        "3: 1 1 1 1 1 2",
        "4: 1 -2 1 -2 3",
        "3: 1 1 -2 -2 1 2",
        "3: 1 -2 1 1 1 -2",
        "3: -2 1 1 2 1 1 2 -1",
    ]
    .iter()
    .map(|w| parse_braid(w).unwrap())
    .collect();
    let mut state = 0xabcdef12u64;
    let mut next = move |m: u64| {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 33) % m
    };
    while words.len() < 250 {
        let strands = 2 + next(4) as u32; // 2..=5
        let len = 3 + next(8) as usize;
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let k = 1 + next(strands as u64 - 1) as i32;
                if next(2) == 0 {
                    k
                } else {
                    -k
                }
            })
            .collect();
        if let Ok(b) = BraidWord::new(strands, letters) {
            words.push(b);
        }
    }
    let dets: Vec<u64> = words
        .iter()
        .map(|b| determinant(&braid_to_pd(b).unwrap()).unwrap())
        .collect();

    for e in [1i64, -1] {
        for x_gf in -2..=2i64 {
            for x_df in -2..=2i64 {
                for lam_gin in -2..=2i64 {
                    for lam_din in -2..=2i64 {
                        let k = Knobs { e, x_gf, x_df, lam_gin, lam_din };
                        let mut ok = true;
                        for (b, &want) in words.iter().zip(&dets) {
                            let m = build(b, &k);
                            let skew = m.antisymmetrized().unwrap();
                            if det_integer(&skew).unwrap() != 1 {
                                ok = false;
                                break;
                            }
                            let sym = m.symmetrized().unwrap();
                            if det_integer(&sym).unwrap().unsigned_abs() != want {
                                ok = false;
                                break;
                            }
                        }
                        if ok {
                            println!(
                                "PASS e={e} x_gf={x_gf} x_df={x_df} lam_gin={lam_gin} lam_din={lam_din}"
                            );
                        }
                    }
                }
            }
        }
    }
    println!("done");
}
