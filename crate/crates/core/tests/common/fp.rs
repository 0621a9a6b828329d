#![allow(dead_code)]

// Plain Vec<u64> arithmetic, low to high, kept apart from the library.

pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn inv(a: u64, p: u64) -> u64 {
    (1..p).find(|b| a * b % p == 1).unwrap()
}

pub fn divrem(a: &[u64], d: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    if r.len() < d.len() {
        return (vec![], trim(r));
    }
    let li = inv(*d.last().unwrap(), p);
    let mut q = vec![0; r.len() - d.len() + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + d.len() - 1] * li % p;
        q[k] = c;
        for (j, b) in d.iter().enumerate() {
            r[k + j] = (r[k + j] + p * p - c * b) % p;
        }
    }
    (trim(q), trim(r))
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    trim(c)
}

pub fn monic_of_degree(d: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    (0..p.pow(d as u32)).map(move |mut k| {
        let mut v: Vec<u64> = (0..d)
            .map(|_| {
                let c = k % p;
                k /= p;
                c
            })
            .collect();
        v.push(1);
        v
    })
}

/// Trial division by every monic polynomial in increasing degree.
pub fn brute_factor(f: &[u64], p: u64) -> Vec<(Vec<u64>, u32)> {
    let lc = *f.last().unwrap();
    let mut rest: Vec<u64> = f.iter().map(|c| c * inv(lc, p) % p).collect();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.len() > 1 {
        if 2 * d > rest.len() - 1 {
            out.push((rest.clone(), 1));
            break;
        }
        for g in monic_of_degree(d, p) {
            let mut e = 0;
            loop {
                let (q, r) = divrem(&rest, &g, p);
                if !r.is_empty() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((g, e));
            }
        }
        d += 1;
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.iter().rev().cmp(b.0.iter().rev())));
    out
}

pub fn brute_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    (1..=deg / 2).all(|d| monic_of_degree(d, p).all(|g| !divrem(f, &g, p).1.is_empty()))
}

pub fn qn_dehomogenized(n: usize, p: u64) -> Vec<u64> {
    let mut a: Vec<u64> = vec![1];
    let mut b: Vec<u64> = vec![0, 1];
    if n == 0 {
        return a;
    }
    for _ in 1..n {
        let mut c = mul(&b, &[0, 1], p);
        c.resize(c.len().max(a.len()), 0);
        for (i, x) in a.iter().enumerate() {
            c[i] = (c[i] + p - x) % p;
        }
        a = b;
        b = trim(c);
    }
    b
}
