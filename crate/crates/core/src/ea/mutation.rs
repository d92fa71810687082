use crate::model::{BitString, RandomStream, Tour};

/// Flips each bit independently with probability `p`.
pub fn mutate_bitflip(x: &BitString, p: f64, rng: &mut RandomStream) -> BitString {
    let mut out = x.clone();
    for i in 0..out.len() {
        if rng.bernoulli(p) {
            out.flip(i);
        }
    }
    out
}

/// Applies `s + 1` uniformly random 2-opt inversions, `s ~ Poisson(lambda_p)`.
pub fn mutate_poisson_2opt(t: &Tour, lambda_p: f64, rng: &mut RandomStream) -> Tour {
    poisson_2opt_counted(t, lambda_p, rng).0
}

/// As [`mutate_poisson_2opt`], also returning the number of inversions applied.
pub fn poisson_2opt_counted(t: &Tour, lambda_p: f64, rng: &mut RandomStream) -> (Tour, u64) {
    let n = t.len();
    let inversions = rng.poisson(lambda_p) + 1;
    let mut out = t.clone();
    if n < 2 {
        return (out, inversions);
    }
    for _ in 0..inversions {
        // Two distinct positions give every unordered pair probability 1/C(n,2).
        let a = rng.below(n);
        let mut b = rng.below(n - 1);
        if b >= a {
            b += 1;
        }
        let (i, j) = (a.min(b) + 1, a.max(b) + 1);
        out.reverse_segment(i, j);
    }
    (out, inversions)
}
