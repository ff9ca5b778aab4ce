//! Derivative-free Nelder–Mead simplex minimization, used by the step-response
//! identification fit.

/// Search options. `initial_step` is the absolute offset added to each
/// coordinate of the start point to build the initial simplex.
#[derive(Debug, Clone)]
pub struct NelderMeadOptions {
    pub max_iterations: usize,
    pub relative_tolerance: f64,
    pub initial_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_iterations: 2000,
            relative_tolerance: 1e-10,
            initial_step: 0.3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadOutcome {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimize `f` starting from `x0` with the standard reflection, expansion,
/// contraction and shrink moves (coefficients 1, 2, 1/2, 1/2). Convergence is
/// declared when the simplex value spread falls below
/// `relative_tolerance * |f_best|` (plus a tiny absolute floor so exact-zero
/// objectives terminate).
pub fn nelder_mead<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadOutcome
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    assert!(n > 0, "empty parameter vector");

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += opts.initial_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        iterations += 1;

        // Order so that values[order[0]] is best, values[order[n]] is worst.
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
        let best = order[0];
        let worst = order[n];
        let second_worst = order[n - 1];

        let spread = values[worst] - values[best];
        if spread <= opts.relative_tolerance * values[best].abs() + 1e-30 {
            converged = true;
            break;
        }

        // Centroid of all vertices except the worst.
        let mut centroid = vec![0.0; n];
        for (idx, v) in simplex.iter().enumerate() {
            if idx != worst {
                for (c, x) in centroid.iter_mut().zip(v) {
                    *c += x / n as f64;
                }
            }
        }

        let point_at = |coef: f64, from: &[f64]| -> Vec<f64> {
            centroid
                .iter()
                .zip(from)
                .map(|(&c, &w)| c + coef * (c - w))
                .collect()
        };

        let reflected = point_at(1.0, &simplex[worst]);
        let f_reflected = f(&reflected);

        if f_reflected < values[best] {
            let expanded = point_at(2.0, &simplex[worst]);
            let f_expanded = f(&expanded);
            if f_expanded < f_reflected {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
        } else if f_reflected < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
        } else {
            let contracted = if f_reflected < values[worst] {
                point_at(0.5, &simplex[worst])
            } else {
                point_at(-0.5, &simplex[worst])
            };
            let f_contracted = f(&contracted);
            if f_contracted < values[worst].min(f_reflected) {
                simplex[worst] = contracted;
                values[worst] = f_contracted;
            } else {
                // Shrink every vertex toward the best one.
                let best_point = simplex[best].clone();
                for (idx, v) in simplex.iter_mut().enumerate() {
                    if idx != best {
                        for (x, b) in v.iter_mut().zip(&best_point) {
                            *x = b + 0.5 * (*x - b);
                        }
                        values[idx] = f(v);
                    }
                }
            }
        }
    }

    let best = (0..=n)
        .min_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap())
        .unwrap();
    NelderMeadOutcome {
        x: simplex[best].clone(),
        fx: values[best],
        iterations,
        converged,
    }
}
