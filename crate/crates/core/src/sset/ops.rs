//! Simplicial operators as monotone maps of finite ordinals.
//!
//! A degeneracy word is stored as the descending list of positions `i` at
//! which the underlying surjection `[k] -> [m]` repeats (`σ(i) = σ(i+1)`);
//! that list is exactly the Eilenberg–Zilber normal form `s_{j1} … s_{jr}`
//! with `j1 > … > jr`.

/// Values of the surjection `[k] -> [m]` described by `word`, with `k = m + word.len()`.
pub fn surjection_of_word(k: usize, word: &[usize]) -> Vec<usize> {
    let mut values = Vec::with_capacity(k + 1);
    let mut v = 0;
    values.push(0);
    for i in 0..k {
        if !word.contains(&i) {
            v += 1;
        }
        values.push(v);
    }
    values
}

/// Inverse of [`surjection_of_word`].
pub fn word_of_surjection(values: &[usize]) -> Vec<usize> {
    let mut word: Vec<usize> = (0..values.len().saturating_sub(1))
        .filter(|&i| values[i] == values[i + 1])
        .collect();
    word.reverse();
    word
}

/// `σ ∘ δ_j`: drop position `j` from the value list.
pub fn after_face(values: &[usize], j: usize) -> Vec<usize> {
    let mut out = values.to_vec();
    out.remove(j);
    out
}

/// `σ ∘ σ_j`: duplicate position `j` in the value list.
pub fn after_degeneracy(values: &[usize], j: usize) -> Vec<usize> {
    let mut out = values.to_vec();
    out.insert(j, values[j]);
    out
}

/// Epi–mono factorization of a monotone map `θ = η ∘ ρ`.
/// Returns (image of θ sorted, ρ values).
pub fn epi_mono(values: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut image: Vec<usize> = values.to_vec();
    image.dedup();
    let rho = values
        .iter()
        .map(|v| image.binary_search(v).expect("value in image"))
        .collect();
    (image, rho)
}

/// Compose surjections given by value lists: first `inner`, then `outer`.
pub fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&i| outer[i]).collect()
}

/// Normalize a word obtained by applying `s_j` on top of an existing normal word.
pub fn push_degeneracy(k_before: usize, word: &[usize], j: usize) -> Vec<usize> {
    let sigma = surjection_of_word(k_before, word);
    word_of_surjection(&after_degeneracy(&sigma, j))
}

/// All descending words with `r` entries drawn from `0..k`, in lexicographic order.
pub fn words(k: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            let mut w = cur.clone();
            w.reverse();
            out.push(w);
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, r, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_round_trip() {
        for k in 0..6 {
            for r in 0..=k {
                for w in words(k, r) {
                    let s = surjection_of_word(k, &w);
                    assert_eq!(*s.last().unwrap(), k - r);
                    assert_eq!(word_of_surjection(&s), w);
                }
            }
        }
    }

    #[test]
    fn degeneracy_identity_normalizes() {
        // s_0 s_0 = s_1 s_0
        let a = push_degeneracy(1, &[0], 0);
        let b = push_degeneracy(1, &[0], 1);
        assert_eq!(a, b);
        assert_eq!(a, vec![1, 0]);
    }

    #[test]
    fn epi_mono_factors() {
        let (img, rho) = epi_mono(&[0, 0, 2, 3, 3]);
        assert_eq!(img, vec![0, 2, 3]);
        assert_eq!(rho, vec![0, 0, 1, 2, 2]);
    }
}
