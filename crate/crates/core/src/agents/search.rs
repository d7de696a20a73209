use crate::Nat;

/// Resumable exponential query search for the unknown `n` behind a
/// membership test of `[0, n]`.
///
/// Each round probes `L + a^k` for `k = 0, 1, …` until a probe fails. If the
/// very first probe fails the answer is `L`; otherwise `L` advances by the
/// last confirmed step and a new round begins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpSearch {
    base: Nat,
    lower: Nat,
    k: u32,
    done: bool,
    pub queries: u64,
}

impl ExpSearch {
    pub fn new(base: Nat) -> Self {
        assert!(base >= 2, "search base must be at least 2");
        ExpSearch {
            base,
            lower: 0,
            k: 0,
            done: false,
            queries: 0,
        }
    }

    /// Next value to test, or `None` once the answer is known.
    pub fn probe(&self) -> Option<Nat> {
        if self.done {
            return None;
        }
        // A probe past the representable range is answered "no" by `answer`.
        Some(
            self.base
                .checked_pow(self.k)
                .and_then(|s| self.lower.checked_add(s))
                .unwrap_or(Nat::MAX),
        )
    }

    pub fn answer(&mut self, member: bool) {
        self.queries += 1;
        if member && self.probe() != Some(Nat::MAX) {
            self.k += 1;
        } else if self.k == 0 {
            self.done = true;
        } else {
            self.lower += self.base.pow(self.k - 1);
            self.k = 0;
        }
    }

    pub fn result(&self) -> Option<Nat> {
        self.done.then_some(self.lower)
    }
}

/// Runs [`ExpSearch`] against `oracle`; returns `(n, queries)`.
pub fn exp_query_search(oracle: &mut dyn FnMut(Nat) -> bool, base: Nat) -> (Nat, u64) {
    let mut s = ExpSearch::new(base);
    while let Some(x) = s.probe() {
        let b = oracle(x);
        s.answer(b);
    }
    (s.result().expect("search finished"), s.queries)
}

/// `(m+1)^{a+1}` with `m` the least exponent such that `n < a^m`.
pub fn query_bound(n: Nat, base: Nat) -> Nat {
    let mut m: u32 = 0;
    while base.checked_pow(m).is_some_and(|p| p <= n) {
        m += 1;
    }
    (m as Nat + 1).pow(base as u32 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_for_five() {
        let mut asked = Vec::new();
        let (n, q) = exp_query_search(
            &mut |x| {
                asked.push(x);
                x <= 5
            },
            2,
        );
        assert_eq!(n, 5);
        // L = 0: 1, 2, 4, 8; L = 4: 5, 6; L = 5: 6.
        assert_eq!(asked, vec![1, 2, 4, 8, 5, 6, 6]);
        assert_eq!(q, 7);
    }

    #[test]
    fn zero_needs_one_query() {
        let (n, q) = exp_query_search(&mut |x| x == 0, 2);
        assert_eq!((n, q), (0, 1));
    }

    #[test]
    fn within_bound() {
        for base in [2, 3] {
            for n in 0..=4096 {
                let (found, q) = exp_query_search(&mut |x| x <= n, base);
                assert_eq!(found, n);
                assert!(q as Nat <= query_bound(n, base), "n={n} a={base} q={q}");
            }
        }
    }
}
