//! Self-dual normal bases and the coordinate identities they satisfy.

use super::{ExtElement, ExtField};
use crate::error::{Error, Result};
use crate::gf2k::FieldElement;
use crate::oracle::Budget;

impl ExtField {
    fn check_search_budget(&self, budget: &Budget) -> Result<u64> {
        match self.size() {
            Some(size) if size <= budget.max_points => Ok(size),
            size => Err(Error::BudgetExceeded {
                what: "self-dual normal basis search",
                needed: size.map_or(u128::MAX, u128::from),
                cap: budget.max_points as u128,
            }),
        }
    }

    /// Whether `{theta^(q^i)}` is self-dual: `Tr(theta^(q^i) theta^(q^j))`
    /// is 1 on the diagonal and 0 elsewhere.
    pub fn is_self_dual_normal(&self, theta: &ExtElement) -> bool {
        let Ok(conj) = self.conjugates(theta) else {
            return false;
        };
        for i in 0..self.n {
            for j in i..self.n {
                let want = if i == j {
                    FieldElement::ONE
                } else {
                    FieldElement::ZERO
                };
                if self.trace(&self.mul_raw(&conj[i], &conj[j])) != want {
                    return false;
                }
            }
        }
        true
    }

    /// First `theta` in index order generating a self-dual normal basis.
    pub fn find_self_dual_normal_basis(&self, budget: &Budget) -> Result<Option<ExtElement>> {
        self.check_search_budget(budget)?;
        Ok(self.elements().find(|t| self.is_self_dual_normal(t)))
    }

    /// Every generator of a self-dual normal basis.
    pub fn all_self_dual_normal_bases(&self, budget: &Budget) -> Result<Vec<ExtElement>> {
        self.check_search_budget(budget)?;
        Ok(self
            .elements()
            .filter(|t| self.is_self_dual_normal(t))
            .collect())
    }

    /// Coordinates `a_i = Tr(beta * theta^(q^i))` of `beta` in the
    /// self-dual normal basis generated by `theta`.
    pub fn normal_coordinates(
        &self,
        beta: &ExtElement,
        theta: &ExtElement,
    ) -> Result<Vec<FieldElement>> {
        self.check(beta)?;
        let conj = self.conjugates(theta)?;
        Ok(conj
            .iter()
            .map(|c| self.trace(&self.mul_raw(beta, c)))
            .collect())
    }

    /// For `n = 4m+2` and a self-dual normal generator `theta`,
    /// `eps = Tr_{q^(2m+1):q}(theta^(q^(2m+1)+1))`.
    pub fn epsilon_of_basis(&self, theta: &ExtElement) -> Result<FieldElement> {
        if self.n % 4 != 2 {
            return Err(Error::PreconditionViolated(format!(
                "epsilon needs n = 2 mod 4, got n = {}",
                self.n
            )));
        }
        if !self.is_self_dual_normal(theta) {
            return Err(Error::PreconditionViolated(format!(
                "{theta} does not generate a self-dual normal basis"
            )));
        }
        let half = self.n / 2;
        let norm = self.mul_raw(&self.frobenius_pow(theta, half)?, theta);
        self.subfield_trace(&norm, half)
    }
}

/// Elementary symmetric sums `(sum a_i, sum_{i<j} a_i a_j)` of coordinates.
pub fn coordinate_sums(
    field: &crate::gf2k::FieldParams,
    coords: &[FieldElement],
) -> (FieldElement, FieldElement) {
    let mut e1 = FieldElement::ZERO;
    let mut e2 = FieldElement::ZERO;
    for &a in coords {
        e2 = field.add(e2, field.mul(e1, a));
        e1 = field.add(e1, a);
    }
    (e1, e2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2k::FieldParams;

    fn ext(k: u32, n: usize) -> ExtField {
        ExtField::new(FieldParams::new(k, None).unwrap(), n, None).unwrap()
    }

    #[test]
    fn existence_examples() {
        let b = Budget::default();
        assert!(ext(1, 3).find_self_dual_normal_basis(&b).unwrap().is_some());
        assert!(ext(1, 4).find_self_dual_normal_basis(&b).unwrap().is_none());
        let e = ext(2, 2);
        let theta = e.find_self_dual_normal_basis(&b).unwrap().unwrap();
        assert_eq!(e.trace(&theta), FieldElement::ONE);
    }

    #[test]
    fn existence_iff_n_not_multiple_of_four() {
        let b = Budget::default();
        for (k, max_n) in [(1u32, 10usize), (2, 5), (3, 3), (4, 2), (5, 2)] {
            for n in 2..=max_n {
                let found = ext(k, n).find_self_dual_normal_basis(&b).unwrap();
                assert_eq!(found.is_some(), n % 4 != 0, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn epsilon_examples() {
        let b = Budget::default();
        let e = ext(1, 2);
        let theta = e.find_self_dual_normal_basis(&b).unwrap().unwrap();
        assert_eq!(e.epsilon_of_basis(&theta).unwrap(), FieldElement::ONE);
        for (k, n) in [(1, 6), (2, 2)] {
            let e = ext(k, n);
            let f = e.base();
            for theta in e.all_self_dual_normal_bases(&b).unwrap() {
                assert_eq!(f.trace_to_gf2(e.epsilon_of_basis(&theta).unwrap()), 1);
            }
        }
        let e = ext(1, 3);
        let theta = e.find_self_dual_normal_basis(&b).unwrap().unwrap();
        assert!(matches!(
            e.epsilon_of_basis(&theta),
            Err(Error::PreconditionViolated(_))
        ));
        let e = ext(1, 2);
        assert!(e.epsilon_of_basis(&e.one()).is_err());
    }

    #[test]
    fn coordinate_identities() {
        let b = Budget::default();
        for (k, n) in [(1, 3), (1, 5), (2, 3), (1, 6), (2, 2), (1, 2)] {
            let e = ext(k, n);
            let f = e.base();
            for theta in e.all_self_dual_normal_bases(&b).unwrap() {
                let eps = (n % 4 == 2).then(|| e.epsilon_of_basis(&theta).unwrap());
                for beta in e.elements() {
                    let coords = e.normal_coordinates(&beta, &theta).unwrap();
                    let (sum, pairs) = coordinate_sums(&f, &coords);
                    assert_eq!(e.trace(&beta), sum);
                    let st = e.subtrace(&beta).unwrap();
                    match eps {
                        None => assert_eq!(st, pairs),
                        Some(eps) => {
                            assert_eq!(st, f.add(pairs, f.mul(eps, f.square(sum))))
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn search_respects_budget() {
        let b = Budget {
            max_points: 8,
            ..Budget::default()
        };
        assert!(ext(1, 4).find_self_dual_normal_basis(&b).is_err());
        assert!(ext(1, 3).find_self_dual_normal_basis(&b).is_ok());
    }
}
