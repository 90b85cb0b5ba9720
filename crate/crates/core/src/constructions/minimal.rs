//! Minimal deterministic OBDD synthesis for an arbitrary truth table and
//! variable order: one node per distinct subfunction at each boundary.

use std::collections::BTreeSet;
use std::collections::HashMap;

use crate::bounds::TruthTable;
use crate::error::{Error, Result};
use crate::obdd::{DecisionPartition, DeterministicObdd, VariableOrder};

/// A synthesized minimal machine together with its per-boundary node
/// counts. `boundary_sizes[u]` is the number of distinct subfunctions
/// after fixing the first u variables along the order; index n holds the
/// sink count.
#[derive(Debug, Clone)]
pub struct MinimalObdd {
    pub machine: DeterministicObdd,
    pub boundary_sizes: Vec<usize>,
}

impl MinimalObdd {
    /// Width over the variable-reading boundaries 0..n-1, the measure
    /// that coincides with the subfunction maximum. The sink boundary is
    /// excluded; the machine's state space may need one extra state for
    /// the second sink when every reading boundary has a single node.
    pub fn reading_width(&self) -> usize {
        self.boundary_sizes[..self.boundary_sizes.len() - 1]
            .iter()
            .copied()
            .max()
            .unwrap()
    }
}

/// Build the minimal deterministic OBDD for `f` under `order`: level u
/// holds one node per distinct subfunction of f after fixing the first u
/// variables along the order.
pub fn build_minimal_obdd(
    f: &TruthTable,
    order: &VariableOrder,
    budget: u64,
) -> Result<MinimalObdd> {
    let n = f.n();
    if n == 0 {
        return Err(Error::InvalidParams(
            "minimal synthesis needs at least one variable".into(),
        ));
    }
    if order.n() != n {
        return Err(Error::LengthMismatch {
            left: order.n(),
            right: n,
        });
    }
    let required = (1u64 << n).saturating_mul(n as u64);
    if required > budget {
        return Err(Error::BudgetExceeded {
            required,
            cap: budget,
        });
    }

    // Subfunctions are slices of the order-adjusted table; the variable
    // read next is the most significant remaining index, so restriction
    // splits a table into halves.
    let table_pi = f.reorder(order);
    let mut reps: Vec<Vec<bool>> = vec![table_pi];
    let mut boundary_sizes = vec![1usize];
    let mut split_maps: Vec<[Vec<usize>; 2]> = Vec::with_capacity(n);

    for _u in 0..n {
        let mut next_reps: Vec<Vec<bool>> = Vec::new();
        let mut index_of: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut on0 = Vec::with_capacity(reps.len());
        let mut on1 = Vec::with_capacity(reps.len());
        for rep in &reps {
            let half = rep.len() / 2;
            for (target, slice) in [(&mut on0, &rep[..half]), (&mut on1, &rep[half..])] {
                let key = slice.to_vec();
                let idx = *index_of.entry(key.clone()).or_insert_with(|| {
                    next_reps.push(key);
                    next_reps.len() - 1
                });
                target.push(idx);
            }
        }
        boundary_sizes.push(next_reps.len());
        split_maps.push([on0, on1]);
        reps = next_reps;
    }

    // Uniform state space: the largest boundary; unused indices at a
    // level loop to state 0 and are unreachable.
    let width = *boundary_sizes.iter().max().unwrap();
    let maps = split_maps
        .iter()
        .map(|level| {
            let pad = |m: &Vec<usize>| {
                let mut full = vec![0usize; width];
                full[..m.len()].copy_from_slice(m);
                full
            };
            [pad(&level[0]), pad(&level[1])]
        })
        .collect();

    // After n splits each representative is a single constant.
    let accept: BTreeSet<usize> = reps
        .iter()
        .enumerate()
        .filter_map(|(i, rep)| if rep[0] { Some(i) } else { None })
        .collect();
    let machine = DeterministicObdd::new(
        width,
        0,
        order.clone(),
        maps,
        DecisionPartition::from_accept(width, accept)?,
    )?;
    Ok(MinimalObdd {
        machine,
        boundary_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{all_inputs, BitString};
    use crate::obdd::DEFAULT_SWEEP_BUDGET;

    fn parity(n: usize) -> TruthTable {
        TruthTable::from_fn(n, |x| x.count_ones() % 2 == 1)
    }

    #[test]
    fn xor_has_width_two_under_every_order() {
        let f = parity(2);
        for pi in [vec![1, 2], vec![2, 1]] {
            let order = VariableOrder::new(pi).unwrap();
            let built = build_minimal_obdd(&f, &order, DEFAULT_SWEEP_BUDGET).unwrap();
            assert_eq!(built.reading_width(), 2);
            for x in all_inputs(2) {
                assert_eq!(built.machine.run(&x).unwrap(), f.eval(&x));
            }
        }
    }

    #[test]
    fn constant_has_width_one() {
        let f = TruthTable::from_fn(3, |_| true);
        let built =
            build_minimal_obdd(&f, &VariableOrder::identity(3), DEFAULT_SWEEP_BUDGET).unwrap();
        assert_eq!(built.reading_width(), 1);
        assert!(built.machine.run(&BitString::parse("010").unwrap()).unwrap());
    }

    #[test]
    fn machine_computes_the_function_for_random_tables() {
        // all 256 functions on 3 variables, identity order
        for code in 0..256u32 {
            let f = TruthTable::from_bits(3, (0..8).map(|i| (code >> i) & 1 == 1).collect())
                .unwrap();
            let built =
                build_minimal_obdd(&f, &VariableOrder::identity(3), DEFAULT_SWEEP_BUDGET)
                    .unwrap();
            for x in all_inputs(3) {
                assert_eq!(built.machine.run(&x).unwrap(), f.eval(&x), "code {code}");
            }
        }
    }

    #[test]
    fn last_variable_only_function_needs_one_reading_node_per_level() {
        let f = TruthTable::from_fn(3, |x| x.bit(3));
        let built =
            build_minimal_obdd(&f, &VariableOrder::identity(3), DEFAULT_SWEEP_BUDGET).unwrap();
        assert_eq!(built.boundary_sizes, vec![1, 1, 1, 2]);
        assert_eq!(built.reading_width(), 1);
        // the machine itself still needs both sinks
        assert_eq!(built.machine.width(), 2);
    }
}
