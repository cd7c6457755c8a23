//! End-to-end check of one block: compare the two lifts row by row and
//! report the divisor data alongside.

use super::report::{render_sing, render_surface, Mismatch, VerifyReport};
use super::sing::SingularPart;
use super::tables::{borch_table, grit_table};
use super::LiftError;
use crate::jacobi::psi::psi_from_block;
use crate::jacobi::{block_expand, block_from_a, JacobiFormSeries};

/// Expansion depths needed to verify a block of the given index through
/// xi-power `m_max` and q-order `n_max`: `(companion rows, block rows)`.
///
/// The divisor needs the companion on `(N + 3) / 4` rows and the product
/// factors need it on `(n_max - 1)(m_max - 1)` rows; the companion
/// construction in turn reads the block on twice that plus two, and the
/// operator rows read the block on `n_max * m_max` rows.
pub fn required_orders(index: i64, n_max: i64, m_max: i64) -> (i64, i64) {
    let psi_order = ((n_max - 1) * (m_max - 1)).max((index + 3) / 4);
    let theta_order = (n_max * m_max).max(2 * (psi_order + 1));
    (psi_order, theta_order)
}

/// Verifies the block attached to `a` through xi-power `m_max` and
/// q-order `n_max`.  Everything downstream of the block expansion is
/// exact.
pub fn verify_conjecture(a: [i64; 4], n_max: i64, m_max: i64) -> Result<VerifyReport, LiftError> {
    let desc = block_from_a(a);
    let (_, theta_order) = required_orders(desc.index(), n_max, m_max);
    let theta = block_expand(&desc, theta_order)?;
    verify_from_expansion(a, &theta, n_max, m_max)
}

/// Same check against a prebuilt expansion of the block (which must be
/// the expansion of the block attached to `a`, at least as deep as
/// [`required_orders`] asks).
pub fn verify_from_expansion(
    a: [i64; 4],
    theta: &JacobiFormSeries,
    n_max: i64,
    m_max: i64,
) -> Result<VerifyReport, LiftError> {
    assert!(n_max >= 1 && m_max >= 1);
    let desc = block_from_a(a);
    let (psi_order, theta_order) = required_orders(desc.index(), n_max, m_max);
    if theta.n_window() < theta_order {
        return Err(LiftError::WindowExceeded {
            requested: theta_order,
            available: theta.n_window(),
        });
    }
    let psi = psi_from_block(&desc, theta, psi_order)?;

    let lift = grit_table(theta, m_max, n_max)?;
    let (product, leading) = borch_table(&psi, m_max, n_max)?;
    let mut first_mismatch = None;
    for m in 1..=m_max {
        let diff = lift.row(m).sub(product.row(m));
        let first = diff.iter().next().map(|(&key, _)| key);
        if let Some((q, z)) = first {
            let (n, r) = (q / 24, z / 2);
            first_mismatch = Some(Mismatch {
                m,
                n,
                r,
                lift: lift.coeff(n, r, m).to_string(),
                product: product.coeff(n, r, m).to_string(),
            });
            break;
        }
    }

    let sing = SingularPart::from_psi(&psi);
    let entries = sing.divisor_entries()?;
    let theta_block_divisors_only = entries.iter().all(|(n0, _, _)| *n0 == 0);
    let divisors = entries
        .iter()
        .map(|(n0, r0, mult)| render_surface(sing.index(), *n0, *r0, 1, mult))
        .collect();

    Ok(VerifyReport {
        a,
        index: desc.index(),
        weight: desc.weight().to_string(),
        n_max,
        m_max,
        leading,
        sing: render_sing(&sing),
        sing_complete: sing.is_complete(),
        divisors,
        theta_block_divisors_only,
        rows_equal: first_mismatch.is_none(),
        first_mismatch,
    })
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_block_verifies_through_row_three() {
        let report = verify_conjecture([1, 1, 1, 1], 2, 3).expect("report");
        assert_eq!(report.index, 25);
        assert_eq!(report.weight, "2");
        assert!(report.rows_equal, "mismatch: {:?}", report.first_mismatch);
        assert!(report.sing_complete);
        assert_eq!(report.sing, "z^4+2z^3+3z^2+4z+4");
        assert_eq!(
            report.divisors,
            vec![
                "10 Hum[[0,1/2],[1/2,25]]",
                "4 Hum[[0,1],[1,25]]",
                "2 Hum[[0,3/2],[3/2,25]]",
                "1 Hum[[0,2],[2,25]]",
            ]
        );
        assert!(report.theta_block_divisors_only);
        assert_eq!(
            (report.leading.a, report.leading.b, report.leading.c),
            (1, 10, 25)
        );
    }

    #[test]
    fn vanishing_directions_are_rejected() {
        // a = [1, -1, 1, 1] zeroes one of the ten arguments.
        assert!(matches!(
            verify_conjecture([1, -1, 1, 1], 2, 2),
            Err(LiftError::Jacobi(_))
        ));
    }
}
