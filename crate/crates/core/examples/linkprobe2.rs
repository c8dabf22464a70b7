//! scratch: full numeric Seifert matrix of (s1 s2)^4 from the flat model
//! plus twist corrections (removed later)

type P3 = [f64; 3];

fn pt(r: f64, theta: f64, z: f64) -> P3 {
    [r * theta.cos(), r * theta.sin(), z]
}

fn loop_poly(k: f64, alpha: f64, beta: f64, u: f64) -> Vec<P3> {
    let mut pts = Vec::new();
    let steps = 160;
    pts.push(pt(k, alpha, -k));
    pts.push(pt(k + 1.0, alpha, -(k + 1.0)));
    pts.push(pt(k + 1.0 - u, alpha, -(k + 1.0)));
    for i in 0..=steps {
        let th = alpha + (beta - alpha) * i as f64 / steps as f64;
        pts.push(pt(k + 1.0 - u, th, -(k + 1.0)));
    }
    pts.push(pt(k + 1.0, beta, -(k + 1.0)));
    pts.push(pt(k, beta, -k));
    pts.push(pt(k - u, beta, -k));
    for i in 0..=steps {
        let th = beta + (alpha - beta) * i as f64 / steps as f64;
        pts.push(pt(k - u, th, -k));
    }
    pts.push(pt(k, alpha, -k));
    pts
}

fn shift_z(c: &[P3], h: f64) -> Vec<P3> {
    c.iter().map(|p| [p[0], p[1], p[2] + h]).collect()
}

fn resample(c: &[P3], step: f64) -> Vec<P3> {
    let mut out = vec![c[0]];
    for w in c.windows(2) {
        let d = sub(w[1], w[0]);
        let len = dot(d, d).sqrt();
        let n = (len / step).ceil().max(1.0) as usize;
        for i in 1..=n {
            let f = i as f64 / n as f64;
            out.push([w[0][0] + d[0] * f, w[0][1] + d[1] * f, w[0][2] + d[2] * f]);
        }
    }
    out
}

fn sub(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
fn cross(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}
fn dot(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn lk(c1: &[P3], c2: &[P3]) -> f64 {
    let mut acc = 0.0;
    for w1 in c1.windows(2) {
        let d1 = sub(w1[1], w1[0]);
        let m1 = [
            (w1[0][0] + w1[1][0]) / 2.0,
            (w1[0][1] + w1[1][1]) / 2.0,
            (w1[0][2] + w1[1][2]) / 2.0,
        ];
        for w2 in c2.windows(2) {
            let d2 = sub(w2[1], w2[0]);
            let m2 = [
                (w2[0][0] + w2[1][0]) / 2.0,
                (w2[0][1] + w2[1][1]) / 2.0,
                (w2[0][2] + w2[1][2]) / 2.0,
            ];
            let r = sub(m1, m2);
            let n = dot(r, r).sqrt();
            if n < 1e-9 {
                continue;
            }
            acc += dot(r, cross(d1, d2)) / (n * n * n);
        }
    }
    acc / (4.0 * std::f64::consts::PI)
}

fn main() {
    // (s1 s2)^4: col1 loops at positions (0,2),(2,4),(4,6); col2 at (1,3),(3,5),(5,7)
    let th = |t: f64| 0.25 + 0.35 * t;
    let loops: Vec<(f64, f64, f64, f64)> = vec![
        // (column k, alpha, beta, inset)
        (1.0, th(0.0), th(2.0), 0.10),
        (1.0, th(2.0), th(4.0), 0.16),
        (1.0, th(4.0), th(6.0), 0.22),
        (2.0, th(1.0), th(3.0), 0.10),
        (2.0, th(3.0), th(5.0), 0.16),
        (2.0, th(5.0), th(7.0), 0.22),
    ];
    let curves: Vec<Vec<P3>> = loops
        .iter()
        .map(|&(k, a, b, u)| resample(&loop_poly(k, a, b, u), 0.02))
        .collect();
    let h = 0.03;
    let n = curves.len();
    let mut flat = vec![vec![0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                flat[i][j] = lk(&curves[i], &shift_z(&curves[j], h));
            }
        }
    }
    println!("flat off-diagonal lk matrix:");
    for row in &flat {
        let s: Vec<String> = row.iter().map(|x| format!("{x:+.2}")).collect();
        println!("  [{}]", s.join(", "));
    }
    // twist corrections for all-positive letters: diag gets (1+1)/2 = 1,
    // shared-band pairs get +1/2 each way
    let shares_band = |i: usize, j: usize| -> bool {
        let (li, lj) = (loops[i], loops[j]);
        li.0 == lj.0 && (li.2 == lj.1 || li.1 == lj.2)
    };
    let mut m = vec![vec![0f64; n]; n];
    for i in 0..n {
        m[i][i] = 1.0;
        for j in 0..n {
            if i != j {
                m[i][j] = flat[i][j] + if shares_band(i, j) { 0.5 } else { 0.0 };
            }
        }
    }
    println!("seifert matrix with twist corrections:");
    for row in &m {
        let s: Vec<String> = row.iter().map(|x| format!("{x:+.2}")).collect();
        println!("  [{}]", s.join(", "));
    }
    // determinant of M + M^T via naive elimination
    let mut b = vec![vec![0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            b[i][j] = m[i][j] + m[j][i];
        }
    }
    let mut det = 1.0;
    for c in 0..n {
        let piv = (c..n).max_by(|&x, &y| b[x][c].abs().partial_cmp(&b[y][c].abs()).unwrap()).unwrap();
        if b[piv][c].abs() < 1e-8 {
            det = 0.0;
            break;
        }
        if piv != c {
            b.swap(piv, c);
            det = -det;
        }
        det *= b[c][c];
        for r in c + 1..n {
            let f = b[r][c] / b[c][c];
            for cc in c..n {
                b[r][cc] -= f * b[c][cc];
            }
        }
    }
    println!("det(M + M^T) = {det:.2} (expect +-3 for the (3,4)-torus knot)");
}
