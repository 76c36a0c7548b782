//! Curvature oracle written directly from the bracket constants.

use g2het::nilalg::LieAlgebra;
use g2het::{int, rat, Rational};

/// Independent curvature oracle for nilpotent metric Lie algebras:
/// `ric(X, X) = −½ Σ_i |[X, e_i]|² + ¼ Σ_{i,j} ⟨[e_i, e_j], X⟩²`.
pub fn scal_oracle(a: &LieAlgebra) -> Rational {
    let c = a.bracket_constants();
    let n = a.dim();
    let mut scal = int(0);
    for x in 0..n {
        for i in 0..n {
            for k in 0..n {
                scal -= c[x][i][k].clone() * c[x][i][k].clone() * rat(1, 2);
            }
        }
        for i in 0..n {
            for j in 0..n {
                scal += c[i][j][x].clone() * c[i][j][x].clone() * rat(1, 4);
            }
        }
    }
    scal
}
