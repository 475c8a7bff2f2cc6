const MAX_SWEEPS: usize = 100;

/// Singular values of a real `rows×cols` row-major matrix, descending, by
/// one-sided (Hestenes) Jacobi on the columns. Returns `cols` values; when
/// `cols > rows` the trailing ones are zero up to rounding.
pub fn singular_values(rows: usize, cols: usize, data: &[f64]) -> Vec<f64> {
    assert_eq!(rows * cols, data.len(), "matrix shape");
    let mut c: Vec<Vec<f64>> = (0..cols)
        .map(|j| (0..rows).map(|i| data[i * cols + j]).collect())
        .collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..cols {
            for j in i + 1..cols {
                let alpha: f64 = c[i].iter().map(|x| x * x).sum();
                let beta: f64 = c[j].iter().map(|x| x * x).sum();
                let gamma: f64 = c[i].iter().zip(&c[j]).map(|(x, y)| x * y).sum();
                if gamma == 0.0 || gamma.abs() <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                let (left, right) = c.split_at_mut(j);
                for (x, y) in left[i].iter_mut().zip(right[0].iter_mut()) {
                    (*x, *y) = (cs * *x - sn * *y, sn * *x + cs * *y);
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut s: Vec<f64> = c.iter().map(|col| col.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_and_rank_deficient() {
        let s = singular_values(2, 2, &[3.0, 0.0, 0.0, -4.0]);
        assert_eq!(s, vec![4.0, 3.0]);
        // rank one: outer product of (1,2) and (1,1,1)
        let s = singular_values(2, 3, &[1.0, 1.0, 1.0, 2.0, 2.0, 2.0]);
        assert!((s[0] - 15f64.sqrt()).abs() < 1e-14);
        assert!(s[1] < 1e-14 && s[2] < 1e-14);
    }

    #[test]
    fn frobenius_is_preserved() {
        let data: Vec<f64> = (0..20).map(|k| ((k * 7919) % 13) as f64 - 6.0).collect();
        let s = singular_values(4, 5, &data);
        let f2: f64 = data.iter().map(|x| x * x).sum();
        let s2: f64 = s.iter().map(|x| x * x).sum();
        assert!((f2 - s2).abs() < 1e-10 * f2);
    }
}
