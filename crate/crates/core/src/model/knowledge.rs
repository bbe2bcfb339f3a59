use super::action::{Action, Move, N_PARTS};

/// Per-component running estimates of how well each movement value pays off.
///
/// `q[i][v]` tracks the fitness of observed actions whose component `i` took
/// value `v`, as an exponential moving average with rate `alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct KnowledgeTable {
    q: [[f64; 3]; N_PARTS],
    alpha: f64,
}

impl KnowledgeTable {
    pub fn new(alpha: f64) -> Self {
        debug_assert!(alpha > 0.0 && alpha <= 1.0);
        KnowledgeTable {
            q: [[0.0; 3]; N_PARTS],
            alpha,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn get(&self, component: usize, value: Move) -> f64 {
        self.q[component][value.index()]
    }

    pub fn rows(&self) -> &[[f64; 3]; N_PARTS] {
        &self.q
    }

    /// Moves every cell touched by `action` toward `fitness`.
    pub fn observe(&mut self, action: &Action, fitness: f64) {
        for (row, m) in self.q.iter_mut().zip(action.parts()) {
            let cell = &mut row[m.index()];
            *cell += self.alpha * (fitness - *cell);
        }
    }

    pub fn observe_all<'a, I>(&mut self, observations: I)
    where
        I: IntoIterator<Item = (&'a Action, f64)>,
    {
        for (a, f) in observations {
            self.observe(a, f);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn still_observation_at_zero_changes_nothing() {
        let mut k = KnowledgeTable::new(0.1);
        k.observe(&Action::STILL, 0.0);
        assert_eq!(k, KnowledgeTable::new(0.1));
    }

    #[test]
    fn single_observation_moves_touched_cells_by_alpha() {
        let mut k = KnowledgeTable::new(0.1);
        let a = Action::from_values([1, 1, -1, 1, -1, 1]).unwrap();
        k.observe(&a, 10.0);
        for (i, m) in a.parts().iter().enumerate() {
            for v in Move::ALL {
                let expected = if v == *m { 1.0 } else { 0.0 };
                assert!((k.get(i, v) - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn repeated_observation_converges_monotonically() {
        let mut k = KnowledgeTable::new(0.1);
        let a = Action::from_values([1, 0, 0, 0, 0, 0]).unwrap();
        let mut prev = 0.0;
        for n in 1..=200 {
            k.observe(&a, 10.0);
            let cur = k.get(0, Move::Up);
            assert!(cur > prev && cur <= 10.0);
            // closed form of the moving average from zero
            let closed = 10.0 * (1.0 - 0.9f64.powi(n));
            assert!((cur - closed).abs() < 1e-9);
            prev = cur;
        }
        assert!(10.0 - prev < 1e-6);
    }
}
