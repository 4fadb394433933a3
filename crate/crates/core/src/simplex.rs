//! Derivative-free 2-D Nelder-Mead descent with a projection constraint.

/// Minimizes `objective` starting from `start`, keeping every vertex inside
/// the feasible set via `project`. Terminates when the simplex diameter
/// drops below `diameter_tol` or after `max_iterations`.
///
/// Returns `(argmin, value, iterations)`.
pub fn minimize_2d<F, P>(
    mut objective: F,
    project: P,
    start: (f64, f64),
    scale: f64,
    diameter_tol: f64,
    max_iterations: usize,
) -> ((f64, f64), f64, usize)
where
    F: FnMut(f64, f64) -> f64,
    P: Fn((f64, f64)) -> (f64, f64),
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let p0 = project(start);
    let p1 = project((start.0 + scale, start.1));
    let p2 = project((start.0, start.1 + scale));
    let mut vertices = [p0, p1, p2];
    let mut values = vertices.map(|(x, y)| objective(x, y));

    let mut iterations = 0;
    while iterations < max_iterations {
        // order by value, best first; ties keep index order for determinism
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
        vertices = [vertices[idx[0]], vertices[idx[1]], vertices[idx[2]]];
        values = [values[idx[0]], values[idx[1]], values[idx[2]]];

        if diameter(&vertices) < diameter_tol {
            break;
        }
        iterations += 1;

        let centroid = (
            0.5 * (vertices[0].0 + vertices[1].0),
            0.5 * (vertices[0].1 + vertices[1].1),
        );
        let worst = vertices[2];
        let reflected = project((
            centroid.0 + REFLECT * (centroid.0 - worst.0),
            centroid.1 + REFLECT * (centroid.1 - worst.1),
        ));
        let f_reflected = objective(reflected.0, reflected.1);

        if f_reflected < values[0] {
            let expanded = project((
                centroid.0 + EXPAND * (centroid.0 - worst.0),
                centroid.1 + EXPAND * (centroid.1 - worst.1),
            ));
            let f_expanded = objective(expanded.0, expanded.1);
            if f_expanded < f_reflected {
                vertices[2] = expanded;
                values[2] = f_expanded;
            } else {
                vertices[2] = reflected;
                values[2] = f_reflected;
            }
        } else if f_reflected < values[1] {
            vertices[2] = reflected;
            values[2] = f_reflected;
        } else {
            let contracted = project((
                centroid.0 + CONTRACT * (worst.0 - centroid.0),
                centroid.1 + CONTRACT * (worst.1 - centroid.1),
            ));
            let f_contracted = objective(contracted.0, contracted.1);
            if f_contracted < values[2] {
                vertices[2] = contracted;
                values[2] = f_contracted;
            } else {
                for k in 1..3 {
                    vertices[k] = project((
                        vertices[0].0 + SHRINK * (vertices[k].0 - vertices[0].0),
                        vertices[0].1 + SHRINK * (vertices[k].1 - vertices[0].1),
                    ));
                    values[k] = objective(vertices[k].0, vertices[k].1);
                }
            }
        }
    }

    let mut best = 0;
    for k in 1..3 {
        if values[k] < values[best] {
            best = k;
        }
    }
    (vertices[best], values[best], iterations)
}

fn diameter(vertices: &[(f64, f64); 3]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let dx = vertices[i].0 - vertices[j].0;
            let dy = vertices[i].1 - vertices[j].1;
            d = d.max((dx * dx + dy * dy).sqrt());
        }
    }
    d
}
