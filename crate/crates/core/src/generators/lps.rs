//! Lubotzky–Phillips–Sarnak Ramanujan graphs.
//!
//! For primes p, q ≡ 1 (mod 4) with (p|q) = +1, the graph is the Cayley
//! graph of PSL(2, Z_q) on p+1 generators obtained from the integer
//! quadruples (a0, a1, a2, a3) with a0² + a1² + a2² + a3² = p, a0 > 0 odd
//! and a1, a2, a3 even. It is (p+1)-regular, connected, non-bipartite, on
//! q(q²-1)/2 vertices, and Ramanujan.
//!
//! Vertices are canonical PSL representatives: the SL(2, Z_q) matrix of the
//! pair {M, -M} whose first nonzero entry in row-major order lies in
//! {1, …, (q-1)/2}, sorted lexicographically to assign ids. Everything is
//! deterministic, so identical parameters give identical files.

use serde::Serialize;

use super::raw_from_neighbor_lists;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LpsParams {
    pub p: u64,
    pub q: u64,
}

/// Construction constants echoed into the JSON sidecar.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LpsMeta {
    pub p: u64,
    pub q: u64,
    /// The square root of -1 mod q used in the generator matrices.
    pub iota: u64,
    pub group_order: u64,
    pub degree: u64,
}

/// A built LPS graph together with its Cayley structure.
pub struct LpsBuild {
    pub graph: Graph,
    pub meta: LpsMeta,
    /// Right multiplication by the unipotent matrix (rows `1 1 / 0 1`): a
    /// fixed-point-free graph automorphism of order q (it commutes with the
    /// left-multiplication generators). Useful for exact block-diagonalization
    /// of the adjacency operator.
    pub unipotent_shift: Vec<u32>,
}

impl LpsParams {
    pub fn validate(&self) -> Result<()> {
        let (p, q) = (self.p, self.q);
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
        }
        if !is_prime(q) {
            return Err(Error::InvalidParameter(format!("q = {q} is not prime")));
        }
        if p % 4 != 1 {
            return Err(Error::InvalidParameter(format!("p = {p} must be 1 mod 4")));
        }
        if q % 4 != 1 {
            return Err(Error::InvalidParameter(format!("q = {q} must be 1 mod 4")));
        }
        if p == q {
            return Err(Error::InvalidParameter("p and q must differ".into()));
        }
        if q * q <= 4 * p {
            return Err(Error::InvalidParameter(format!(
                "q = {q} must exceed 2*sqrt(p) for p = {p}"
            )));
        }
        if legendre(p, q) != 1 {
            return Err(Error::InvalidParameter(format!(
                "(p|q) = -1 for p = {p}, q = {q}: bipartite PGL case unsupported"
            )));
        }
        Ok(())
    }
}

type Mat = [u64; 4]; // row-major [[a, b], [c, d]] with entries mod q

/// Builds the LPS graph for validated parameters.
pub fn lps_graph(params: &LpsParams) -> Result<LpsBuild> {
    params.validate()?;
    let (p, q) = (params.p, params.q);
    let iota = sqrt_mod(q - 1, q)
        .ok_or_else(|| Error::Internal(format!("no square root of -1 mod {q}")))?;

    let generators = generator_set(p, q, iota)?;
    let degree = (p + 1) as usize;

    // All of PSL(2, q) as canonical matrices, lexicographically sorted.
    let keys = enumerate_psl(q);
    let n = keys.len();
    let expected = (q * (q * q - 1) / 2) as usize;
    if n != expected {
        return Err(Error::Internal(format!(
            "PSL(2,{q}) enumeration found {n} elements, expected {expected}"
        )));
    }

    let id_of = |m: &Mat| -> Result<u32> {
        keys.binary_search(&encode(m, q))
            .map(|i| i as u32)
            .map_err(|_| Error::Internal("product left the canonical vertex set".into()))
    };

    let mut lists: Vec<Vec<u32>> = Vec::with_capacity(n);
    for &key in &keys {
        let m = decode(key, q);
        let mut row = Vec::with_capacity(degree);
        for s in &generators {
            row.push(id_of(&canonical(mat_mul(s, &m, q), q))?);
        }
        lists.push(row);
    }

    let unipotent = [1, 1, 0, 1];
    let mut unipotent_shift = Vec::with_capacity(n);
    for &key in &keys {
        let m = decode(key, q);
        unipotent_shift.push(id_of(&canonical(mat_mul(&m, &unipotent, q), q))?);
    }

    let graph = raw_from_neighbor_lists(n, degree, lists)?.into_graph()?;
    Ok(LpsBuild {
        graph,
        meta: LpsMeta {
            p,
            q,
            iota,
            group_order: expected as u64,
            degree: p + 1,
        },
        unipotent_shift,
    })
}

/// The p+1 canonical generator matrices, checked to be a symmetric set
/// (closed under inversion) not containing the identity.
fn generator_set(p: u64, q: u64, iota: u64) -> Result<Vec<Mat>> {
    let quads = sum_of_four_squares(p);
    if quads.len() as u64 != p + 1 {
        return Err(Error::Internal(format!(
            "found {} quadruples for p = {p}, expected {}",
            quads.len(),
            p + 1
        )));
    }
    // det of the quaternion matrix is p; scale by 1/sqrt(p) to land in SL.
    let sqrt_p = sqrt_mod(p % q, q)
        .ok_or_else(|| Error::Internal(format!("p = {p} not a square mod {q}")))?;
    let scale = mod_inv(sqrt_p, q);

    let modq = |x: i64| -> u64 { x.rem_euclid(q as i64) as u64 };
    let mut gens = Vec::with_capacity(quads.len());
    for &[a0, a1, a2, a3] in &quads {
        let m: Mat = [
            modq(a0 + iota as i64 * a1),
            modq(a2 + iota as i64 * a3),
            modq(-a2 + iota as i64 * a3),
            modq(a0 - iota as i64 * a1),
        ];
        let scaled = [
            m[0] * scale % q,
            m[1] * scale % q,
            m[2] * scale % q,
            m[3] * scale % q,
        ];
        gens.push(canonical(scaled, q));
    }
    gens.sort_unstable();
    gens.dedup();
    if gens.len() as u64 != p + 1 {
        return Err(Error::Internal(
            "generator quadruples did not give p+1 distinct matrices".into(),
        ));
    }
    if gens.contains(&[1, 0, 0, 1]) {
        return Err(Error::Internal(
            "generator set contains the identity".into(),
        ));
    }
    for g in &gens {
        // inverse of a determinant-one matrix [[a,b],[c,d]] is [[d,-b],[-c,a]]
        let inv = canonical([g[3], (q - g[1]) % q, (q - g[2]) % q, g[0]], q);
        if gens.binary_search(&inv).is_err() {
            return Err(Error::Internal("generator set is not symmetric".into()));
        }
    }
    Ok(gens)
}

/// Integer quadruples (a0, a1, a2, a3) with a0 odd positive, a1, a2, a3 even,
/// and a0² + a1² + a2² + a3² = p. There are exactly p+1 of them.
fn sum_of_four_squares(p: u64) -> Vec<[i64; 4]> {
    let p = p as i64;
    let isqrt = |r: i64| {
        let mut s = (r as f64).sqrt() as i64;
        while s * s > r {
            s -= 1;
        }
        while (s + 1) * (s + 1) <= r {
            s += 1;
        }
        s
    };
    let evens_upto = move |r: i64| {
        let b = isqrt(r);
        let b = b - (b & 1);
        (-b..=b).step_by(2)
    };
    let mut out = Vec::new();
    for a0 in (1..).step_by(2).take_while(|&a| a * a <= p) {
        let r0 = p - a0 * a0;
        for a1 in evens_upto(r0) {
            let r1 = r0 - a1 * a1;
            for a2 in evens_upto(r1) {
                let r2 = r1 - a2 * a2;
                let a3 = isqrt(r2);
                if a3 * a3 == r2 && a3.rem_euclid(2) == 0 {
                    if a3 == 0 {
                        out.push([a0, a1, a2, 0]);
                    } else {
                        out.push([a0, a1, a2, a3]);
                        out.push([a0, a1, a2, -a3]);
                    }
                }
            }
        }
    }
    out
}

/// All canonical PSL(2, q) representatives, as sorted encoded keys.
///
/// SL(2, q) is enumerated directly — every projective class with square
/// determinant contains exactly the pair {M, -M} in SL, so canonicalizing
/// and deduplicating yields the same vertex set as scanning all matrices
/// with square determinant, at a fraction of the cost.
fn enumerate_psl(q: u64) -> Vec<u64> {
    let mut keys = Vec::with_capacity((q * (q * q - 1)) as usize);
    for a in 1..q {
        let inv_a = mod_inv(a, q);
        for b in 0..q {
            for c in 0..q {
                let d = (1 + b * c) % q * inv_a % q;
                keys.push(encode(&canonical([a, b, c, d], q), q));
            }
        }
    }
    for b in 1..q {
        let c = (q - mod_inv(b, q)) % q;
        for d in 0..q {
            keys.push(encode(&canonical([0, b, c, d], q), q));
        }
    }
    keys.sort_unstable();
    keys.dedup();
    keys
}

/// Canonical representative of {M, -M}: the first nonzero entry in row-major
/// order lies in {1, …, (q-1)/2}.
fn canonical(m: Mat, q: u64) -> Mat {
    let first = m.iter().copied().find(|&x| x != 0).unwrap_or(0);
    if first > (q - 1) / 2 {
        [
            (q - m[0]) % q,
            (q - m[1]) % q,
            (q - m[2]) % q,
            (q - m[3]) % q,
        ]
    } else {
        m
    }
}

fn mat_mul(x: &Mat, y: &Mat, q: u64) -> Mat {
    [
        (x[0] * y[0] + x[1] * y[2]) % q,
        (x[0] * y[1] + x[1] * y[3]) % q,
        (x[2] * y[0] + x[3] * y[2]) % q,
        (x[2] * y[1] + x[3] * y[3]) % q,
    ]
}

fn encode(m: &Mat, q: u64) -> u64 {
    ((m[0] * q + m[1]) * q + m[2]) * q + m[3]
}

fn decode(key: u64, q: u64) -> Mat {
    [key / (q * q * q), key / (q * q) % q, key / q % q, key % q]
}

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= x {
        if x.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    acc
}

fn mod_inv(x: u64, q: u64) -> u64 {
    mod_pow(x, q - 2, q)
}

/// Euler's criterion; returns 1 or -1 for x coprime to q.
fn legendre(x: u64, q: u64) -> i64 {
    match mod_pow(x % q, (q - 1) / 2, q) {
        1 => 1,
        r if r == q - 1 => -1,
        _ => 0,
    }
}

/// Smallest nonnegative square root of `a` mod q, by exhaustive search
/// (q stays desk-scale here).
fn sqrt_mod(a: u64, q: u64) -> Option<u64> {
    (0..q).find(|&x| x * x % q == a % q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_validation() {
        assert!(LpsParams { p: 4, q: 29 }.validate().is_err()); // p not prime
        assert!(LpsParams { p: 5, q: 27 }.validate().is_err()); // q not prime
        assert!(LpsParams { p: 7, q: 29 }.validate().is_err()); // p = 3 mod 4
        assert!(LpsParams { p: 5, q: 5 }.validate().is_err());
        assert!(LpsParams { p: 13, q: 5 }.validate().is_err()); // q too small
        let err = LpsParams { p: 5, q: 13 }.validate().unwrap_err();
        assert!(err.to_string().contains("bipartite"), "{err}");
        assert!(LpsParams { p: 5, q: 29 }.validate().is_ok());
    }

    #[test]
    fn number_theory_helpers() {
        assert_eq!(legendre(5, 29), 1);
        assert_eq!(legendre(5, 13), -1);
        assert_eq!(sqrt_mod(28, 29), Some(12)); // iota for q = 29
        assert_eq!(mod_inv(3, 29) * 3 % 29, 1);
    }

    #[test]
    fn four_square_quadruples_for_p5() {
        let quads = sum_of_four_squares(5);
        assert_eq!(quads.len(), 6);
        for q in quads {
            assert_eq!(q.iter().map(|x| x * x).sum::<i64>(), 5);
            assert!(q[0] > 0 && q[0] % 2 == 1);
        }
    }

    #[test]
    fn lps_5_29_shape_and_meta() {
        let built = lps_graph(&LpsParams { p: 5, q: 29 }).unwrap();
        assert_eq!(built.graph.n(), 12180);
        assert_eq!(built.graph.d(), 6);
        assert_eq!(built.meta.group_order, 12180);
        assert_eq!(built.meta.iota, 12);
        assert!(built.graph.girth_transitive() >= 5);
    }

    #[test]
    fn lps_5_29_sphere_sizes_agree_between_roots() {
        // vertex-transitivity spot check
        let built = lps_graph(&LpsParams { p: 5, q: 29 }).unwrap();
        let a = built.graph.sphere_sizes(0, 3);
        let b = built.graph.sphere_sizes(built.graph.n() as u32 / 2, 3);
        assert_eq!(a, b);
        assert_eq!(a[1], 6);
    }

    #[test]
    fn unipotent_shift_is_a_free_automorphism() {
        let built = lps_graph(&LpsParams { p: 5, q: 29 }).unwrap();
        let sigma = &built.unipotent_shift;
        let g = &built.graph;
        // free
        assert!(sigma.iter().enumerate().all(|(v, &sv)| sv as usize != v));
        // graph automorphism
        for v in 0..g.n() as u32 {
            for &u in g.neighbors(v) {
                assert!(g.has_edge(sigma[v as usize], sigma[u as usize]));
            }
        }
        // order q: iterating q times returns to the start
        let mut v = 0u32;
        for _ in 0..29 {
            v = sigma[v as usize];
        }
        assert_eq!(v, 0);
    }

    #[test]
    fn lps_5_13_is_rejected_as_bipartite_case() {
        assert!(lps_graph(&LpsParams { p: 5, q: 13 }).is_err());
    }
}
