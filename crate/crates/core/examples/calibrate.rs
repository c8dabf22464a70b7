//! scratch calibration runner (removed before final commit)
use dkt_core::algebra::det_integer;
use dkt_core::codec::{braid_to_pd, double_twist_pd, parse_braid};
use dkt_core::coloring::determinant;

fn main() {
    let mut words: Vec<dkt_core::codec::BraidWord> = [
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
    ]
    .iter()
    .map(|w| parse_braid(w).unwrap())
    .collect();
    // add random knot-closure words
    let mut state = 0x12345678u64;
    let mut next = move |m: u64| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) % m
    };
    while words.len() < 120 {
        let strands = 2 + next(3) as u32; // 2..=4
        let len = 3 + next(7) as usize;
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
        if let Ok(b) = dkt_core::codec::BraidWord::new(strands, letters) {
            words.push(b);
        }
    }
    let opts: [(i64, i64); 4] = [(0, 1), (0, -1), (1, 0), (-1, 0)];
    for lo in opts {
        for up in opts {
            let mut fail = String::new();
            for b in &words {
                let w = b.to_string();
                let m = build(b, lo, up);
                let skew = m.antisymmetrized().unwrap();
                let sd = det_integer(&skew).unwrap();
                if sd != 1 {
                    fail = format!("{w}: skew det {sd}");
                    break;
                }
                let sym = m.symmetrized().unwrap();
                let dm = det_integer(&sym).unwrap().unsigned_abs();
                let dd = determinant(&braid_to_pd(b).unwrap()).unwrap();
                if dm != dd {
                    fail = format!("{w}: {dm} vs {dd}");
                    break;
                }
            }
            if fail.is_empty() {
                println!("PASS lo={lo:?} up={up:?}");
            } else {
                println!("fail lo={lo:?} up={up:?}: {fail}");
            }
        }
    }
    for m in -3i64..=3 {
        for n in -3i64..=3 {
            let pd = double_twist_pd(m, n);
            let d = determinant(&pd).unwrap();
            let want = (4 * m * n - 1).unsigned_abs();
            if d != want {
                println!("double_twist({m},{n}): det {d} want {want}");
            }
        }
    }
}

fn build(b: &dkt_core::codec::BraidWord, lo: (i64, i64), up: (i64, i64)) -> dkt_core::IntMatrix {
    let strands = b.strands() as usize;
    let letters = b.letters();
    let n = letters.len();
    let rank = n + 1 - strands;
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
    let mut m = dkt_core::IntMatrix::zeros(rank, rank);
    for (i, li) in loops.iter().enumerate() {
        m[(i, i)] = (li.sign.0 + li.sign.1) / 2;
        for (j, lj) in loops.iter().enumerate().skip(i + 1) {
            if lj.col == li.col {
                if lj.pos.0 == li.pos.1 {
                    let e = li.sign.1;
                    m[(i, j)] = (e + 1) / 2;
                    m[(j, i)] = (e - 1) / 2;
                }
            } else if lj.col == li.col + 1 {
                let (a, bb) = li.pos;
                let (c, d) = lj.pos;
                if a < c && c < bb && bb < d {
                    m[(i, j)] = lo.0;
                    m[(j, i)] = lo.1;
                } else if c < a && a < d && d < bb {
                    m[(i, j)] = up.0;
                    m[(j, i)] = up.1;
                }
            }
        }
    }
    m
}
