//! Classical Chevalley-Eilenberg complex for purely even inputs, written out
//! with the alternating-sum formulas and used as an independent oracle.
#![allow(dead_code)]

use superext::linalg::Matrix;
use superext::superalg::ModuleAction;
use superext::Rat;

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Value of an alternating cochain on an arbitrary tuple of basis indices.
fn eval(c: &[Rat], forms: &[Vec<usize>], d: usize, args: &[usize]) -> Vec<Rat> {
    let mut idx: Vec<usize> = args.to_vec();
    let mut sign = 1i64;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                sign = -sign;
            } else if idx[j] == idx[j + 1] {
                return vec![Rat::from_integer(0.into()); d];
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return vec![Rat::from_integer(0.into()); d];
    }
    let p = forms.iter().position(|f| *f == idx).unwrap();
    c[p * d..(p + 1) * d]
        .iter()
        .map(|x| x * Rat::from_integer(sign.into()))
        .collect()
}

/// Cochain with bilinear extension in the first slot.
fn eval_vec(c: &[Rat], forms: &[Vec<usize>], d: usize, first: &[Rat], rest: &[usize]) -> Vec<Rat> {
    let mut out = vec![Rat::from_integer(0.into()); d];
    for (l, coef) in first.iter().enumerate() {
        if *coef == Rat::from_integer(0.into()) {
            continue;
        }
        let mut args = vec![l];
        args.extend_from_slice(rest);
        for (o, v) in out.iter_mut().zip(eval(c, forms, d, &args)) {
            *o += coef * v;
        }
    }
    out
}

fn add_scaled(acc: &mut [Rat], s: i64, v: &[Rat]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += Rat::from_integer(s.into()) * b;
    }
}

/// Matrix of `d: C^k -> C^{k+1}` for k = 0, 1, 2.
fn differential(module: &ModuleAction<Rat>, k: usize) -> Matrix<Rat> {
    let g = module.algebra();
    let (n, d) = (g.dim(), module.dim());
    let src = subsets(n, k);
    let dst = subsets(n, k + 1);
    let mut columns = Vec::new();
    for s in 0..src.len() * d {
        let mut c = vec![Rat::from_integer(0.into()); src.len() * d];
        c[s] = Rat::from_integer(1.into());
        let mut image = Vec::with_capacity(dst.len() * d);
        for t in &dst {
            let mut v = vec![Rat::from_integer(0.into()); d];
            // x_{t_i} . c(t without i)
            for i in 0..t.len() {
                let rest: Vec<usize> = t
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &x)| x)
                    .collect();
                let val = eval(&c, &src, d, &rest);
                let acted = module.act(&g.unit(t[i]), &val);
                add_scaled(&mut v, if i % 2 == 0 { 1 } else { -1 }, &acted);
            }
            // c([x_i, x_j], rest)
            for i in 0..t.len() {
                for j in i + 1..t.len() {
                    let rest: Vec<usize> = t
                        .iter()
                        .enumerate()
                        .filter(|&(l, _)| l != i && l != j)
                        .map(|(_, &x)| x)
                        .collect();
                    let br = g.bracket_basis(t[i], t[j]).to_vec();
                    let val = eval_vec(&c, &src, d, &br, &rest);
                    add_scaled(&mut v, if (i + j) % 2 == 0 { 1 } else { -1 }, &val);
                }
            }
            image.extend(v);
        }
        columns.push(image);
    }
    Matrix::from_columns(dst.len() * d, &columns).unwrap()
}

/// `(dim H^1, dim H^2, dim Z^1, dim Z^2, dim B^2)` of a purely even module.
pub fn ce_dims(module: &ModuleAction<Rat>) -> (usize, usize, usize, usize, usize) {
    assert!(module.algebra().basis().is_all_even() && module.space().is_all_even());
    let n = module.algebra().dim();
    let d = module.dim();
    let r0 = differential(module, 0).rank();
    let r1 = differential(module, 1).rank();
    let r2 = differential(module, 2).rank();
    let c1 = n * d;
    let c2 = subsets(n, 2).len() * d;
    let z1 = c1 - r1;
    let z2 = c2 - r2;
    (z1 - r0, z2 - r1, z1, z2, r1)
}

pub fn q(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn fr(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}
