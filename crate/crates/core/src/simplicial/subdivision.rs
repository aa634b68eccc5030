use super::{Complex, Simplex};
use std::fmt;

/// `Bd(K)`: vertices are the simplices of `K`, simplices are strict chains
/// `σ_0 ⊊ … ⊊ σ_n`. Because simplices order by size first, each chain is
/// stored in inclusion order.
pub fn barycentric_subdivision<V: Ord + Clone + fmt::Debug>(k: &Complex<V>) -> Complex<Simplex<V>> {
    let mut out = Complex::new();
    // Grow each chain downward from its top element by choosing any proper
    // face of the current bottom; every chain arises exactly once.
    for top in k.all_simplices() {
        let mut stack: Vec<Vec<Simplex<V>>> = vec![vec![top.clone()]];
        while let Some(chain) = stack.pop() {
            let low = &chain[0];
            for f in low.faces() {
                if f.dim() < low.dim() {
                    let mut c = Vec::with_capacity(chain.len() + 1);
                    c.push(f);
                    c.extend(chain.iter().cloned());
                    stack.push(c);
                }
            }
            out.insert(Simplex::from_sorted(chain));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subdivided_edge() {
        let k = Complex::from_simplices([Simplex::new([0, 1]).unwrap()]);
        assert_eq!(barycentric_subdivision(&k).f_vector(), vec![3, 2]);
    }

    #[test]
    fn subdivided_triangle() {
        let k = Complex::from_simplices([Simplex::new([0, 1, 2]).unwrap()]);
        let b = barycentric_subdivision(&k);
        assert_eq!(b.f_vector(), vec![7, 12, 6]);
        assert_eq!(b.euler_characteristic(), 1);
        assert!(b.all_simplices().all(|s| s.is_chain()));
    }
}
