//! Brute-force point counts over a prime field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CoreError;
use crate::graph::Multigraph;

/// Default ceiling on the size `q^(2|E|)` of a brute-force enumeration.
pub const DEFAULT_CEILING: u128 = 100_000_000;

/// One unit of `F_q` per vertex, with product one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FqEta {
    pub q: u64,
    pub values: Vec<u64>,
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn inverse(a: u64, q: u64) -> u64 {
    // a^(q-2) by Fermat
    let (mut base, mut exp, mut acc) = (a % q, q - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

impl FqEta {
    pub fn new(g: &Multigraph, q: u64, values: Vec<u64>) -> Result<Self, CoreError> {
        if !is_prime(q) {
            return Err(CoreError::NotPrime(q));
        }
        if values.len() != g.vertex_count() {
            return Err(CoreError::EtaLength {
                expected: g.vertex_count(),
                found: values.len(),
            });
        }
        for (vertex, &value) in values.iter().enumerate() {
            if value % q == 0 {
                return Err(CoreError::EtaNotUnit { vertex, value, q });
            }
        }
        let product = values.iter().fold(1, |acc, &v| mul_mod(acc, v, q));
        if product != 1 {
            return Err(CoreError::EtaProduct { product, q });
        }
        Ok(FqEta {
            q,
            values: values.into_iter().map(|v| v % q).collect(),
        })
    }
}

/// `prod_{tail(e) = v} a_e * prod_{head(e) = v} a_e^{-1}` for every vertex.
fn boundary(g: &Multigraph, a: &[u64], q: u64) -> Vec<u64> {
    let mut out = vec![1u64; g.vertex_count()];
    for (e, &ae) in g.edges().iter().zip(a) {
        out[e.tail] = mul_mod(out[e.tail], ae, q);
        out[e.head] = mul_mod(out[e.head], inverse(ae, q), q);
    }
    out
}

/// Every `a` in `(F_q^*)^E` with boundary `eta` leaves `G \ S(a)` connected,
/// where `S(a)` is the set of edges with `a_e = 1`.
pub fn is_generic(g: &Multigraph, eta: &FqEta) -> bool {
    let q = eta.q;
    let m = g.edge_count();
    let mut a = vec![1u64; m];
    loop {
        if boundary(g, &a, q) == eta.values {
            let s: u64 = a
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == 1)
                .fold(0, |acc, (k, _)| acc | 1 << k);
            if g.components_of_mask(g.full_mask() & !s) != 1 {
                return false;
            }
        }
        // odometer over 1..q-1
        let mut k = 0;
        while k < m && a[k] == q - 1 {
            a[k] = 1;
            k += 1;
        }
        if k == m {
            return true;
        }
        a[k] += 1;
    }
}

/// First generic `eta` with `eta_1..eta_(n-1)` in lexicographic order over
/// `1..q-1`; the last value is forced by the product condition.
pub fn find_generic_eta(g: &Multigraph, q: u64) -> Result<FqEta, CoreError> {
    if !is_prime(q) {
        return Err(CoreError::NotPrime(q));
    }
    let n = g.vertex_count();
    let free = n.saturating_sub(1);
    let mut head = vec![1u64; free];
    loop {
        let prod = head.iter().fold(1, |acc, &v| mul_mod(acc, v, q));
        let mut values = head.clone();
        if n > 0 {
            values.push(inverse(prod, q));
        }
        let eta = FqEta { q, values };
        if is_generic(g, &eta) {
            return Ok(eta);
        }
        let mut k = free;
        loop {
            if k == 0 {
                return Err(CoreError::NoGenericEta(q));
            }
            k -= 1;
            if head[k] < q - 1 {
                head[k] += 1;
                for v in &mut head[k + 1..] {
                    *v = 1;
                }
                break;
            }
        }
    }
}

fn enumeration_size(g: &Multigraph, q: u64) -> u128 {
    (q as u128).saturating_pow(2 * g.edge_count() as u32)
}

/// Points of `{(x, y) in (F_q^2)^E : 1 + x_e y_e != 0, vertex equations = eta}`
/// divided by `(q - 1)^(|V| - 1)`.
pub fn count_points(g: &Multigraph, eta: &FqEta) -> Result<BigInt, CoreError> {
    count_points_with_ceiling(g, eta, DEFAULT_CEILING)
}

pub fn count_points_with_ceiling(
    g: &Multigraph,
    eta: &FqEta,
    ceiling: u128,
) -> Result<BigInt, CoreError> {
    let q = eta.q;
    if eta.values.len() != g.vertex_count() {
        return Err(CoreError::EtaLength {
            expected: g.vertex_count(),
            found: eta.values.len(),
        });
    }
    let size = enumeration_size(g, q);
    if size > ceiling {
        return Err(CoreError::TooLarge { size, ceiling });
    }
    if !is_generic(g, eta) {
        return Err(CoreError::NonGenericEta(q));
    }
    let inv: Vec<u64> = (0..q)
        .map(|a| if a == 0 { 0 } else { inverse(a, q) })
        .collect();
    let walk = Walk {
        g,
        q,
        inv: &inv,
        target: &eta.values,
    };
    let total: u64 = if g.edge_count() == 0 {
        u64::from(eta.values.iter().all(|&v| v == 1))
    } else {
        (0..q * q)
            .into_par_iter()
            .map(|xy| {
                let mut prod = vec![1u64; g.vertex_count()];
                walk.step(0, (xy / q, xy % q), &mut prod)
            })
            .sum()
    };
    let total = BigInt::from(total);
    let exponent = g.vertex_count().saturating_sub(1);
    let divisor = BigInt::from(q - 1).pow(exponent as u32);
    let (quot, rem) = total.div_rem(&divisor);
    if !rem.is_zero() {
        return Err(CoreError::InexactDivision {
            total: total.to_string(),
            exponent,
        });
    }
    Ok(quot)
}

struct Walk<'a> {
    g: &'a Multigraph,
    q: u64,
    inv: &'a [u64],
    target: &'a [u64],
}

impl Walk<'_> {
    fn step(&self, k: usize, (x, y): (u64, u64), prod: &mut Vec<u64>) -> u64 {
        let q = self.q;
        let a = (1 + mul_mod(x, y, q)) % q;
        if a == 0 {
            return 0;
        }
        let e = self.g.edge(k);
        let (t, h) = (prod[e.tail], prod[e.head]);
        prod[e.tail] = mul_mod(prod[e.tail], a, q);
        prod[e.head] = mul_mod(prod[e.head], self.inv[a as usize], q);
        let count = if k + 1 == self.g.edge_count() {
            u64::from(prod.as_slice() == self.target)
        } else {
            let mut c = 0;
            for x in 0..q {
                for y in 0..q {
                    c += self.step(k + 1, (x, y), prod);
                }
            }
            c
        };
        prod[e.head] = h;
        prod[e.tail] = t;
        count
    }
}

/// Counts for every generic `eta`, to test independence of the choice.
pub fn counts_over_generic_etas(g: &Multigraph, q: u64) -> Result<Vec<(FqEta, BigInt)>, CoreError> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let free = n.saturating_sub(1);
    let total = (q - 1).pow(free as u32);
    for idx in 0..total {
        let mut head = Vec::with_capacity(free);
        let mut r = idx;
        for _ in 0..free {
            head.push(r % (q - 1) + 1);
            r /= q - 1;
        }
        let prod = head.iter().fold(1, |acc, &v| mul_mod(acc, v, q));
        let mut values = head;
        values.push(inverse(prod, q));
        let eta = FqEta::new(g, q, values)?;
        if is_generic(g, &eta) {
            let c = count_points(g, &eta)?;
            out.push((eta, c));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn genericity() {
        let b = banana();
        assert!(!is_generic(&b, &FqEta::new(&b, 5, vec![1, 1]).unwrap()));
        assert!(is_generic(&b, &FqEta::new(&b, 5, vec![2, 3]).unwrap()));
        let l = loop_graph();
        assert!(is_generic(&l, &FqEta::new(&l, 2, vec![1]).unwrap()));
    }

    #[test]
    fn scan() {
        assert_eq!(find_generic_eta(&banana(), 5).unwrap().values, vec![2, 3]);
        assert_eq!(find_generic_eta(&loop_graph(), 2).unwrap().values, vec![1]);
        assert_eq!(
            find_generic_eta(&theta(), 2),
            Err(CoreError::NoGenericEta(2))
        );
        assert_eq!(find_generic_eta(&theta(), 3).unwrap().values, vec![2, 2]);
        assert_eq!(find_generic_eta(&banana(), 4), Err(CoreError::NotPrime(4)));
    }

    #[test]
    fn counts() {
        let l = loop_graph();
        assert_eq!(
            count_points(&l, &find_generic_eta(&l, 5).unwrap()).unwrap(),
            BigInt::from(21)
        );
        let b = banana();
        assert_eq!(
            count_points(&b, &find_generic_eta(&b, 5).unwrap()).unwrap(),
            BigInt::from(26)
        );
        assert_eq!(
            count_points(&b, &find_generic_eta(&b, 7).unwrap()).unwrap(),
            BigInt::from(50)
        );
        let bad = FqEta::new(&b, 5, vec![1, 1]).unwrap();
        assert_eq!(count_points(&b, &bad), Err(CoreError::NonGenericEta(5)));
        let t = theta();
        assert!(matches!(
            count_points_with_ceiling(&t, &find_generic_eta(&t, 3).unwrap(), 10),
            Err(CoreError::TooLarge { .. })
        ));
    }

    #[test]
    fn eta_validation() {
        let b = banana();
        assert!(matches!(
            FqEta::new(&b, 5, vec![2]),
            Err(CoreError::EtaLength { .. })
        ));
        assert!(matches!(
            FqEta::new(&b, 5, vec![0, 1]),
            Err(CoreError::EtaNotUnit { .. })
        ));
        assert!(matches!(
            FqEta::new(&b, 5, vec![2, 2]),
            Err(CoreError::EtaProduct { .. })
        ));
    }
}
