//! Serializable verification reports and their text rendering.

use num::One;
use serde::{Deserialize, Serialize};

use super::sing::SingularPart;
use super::tables::LeadingExponents;
use crate::fourier::Coeff;

/// First place where the two lift tables disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub m: i64,
    pub n: i64,
    pub r: i64,
    pub lift: String,
    pub product: String,
}

/// Outcome of checking one block: the singular data of its companion,
/// the divisor of the product expansion, and the row-by-row comparison
/// of the two lifts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub a: [i64; 4],
    pub index: i64,
    pub weight: String,
    pub n_max: i64,
    pub m_max: i64,
    pub leading: LeadingExponents,
    pub sing: String,
    pub sing_complete: bool,
    pub divisors: Vec<String>,
    /// True when every surface in the divisor has `n0 = 0`, i.e. comes
    /// from a zero of the block itself.
    pub theta_block_divisors_only: bool,
    pub rows_equal: bool,
    pub first_mismatch: Option<Mismatch>,
}

fn term_string(c: &Coeff, n: i64, r: i64) -> String {
    let mut body = String::new();
    if n == 1 {
        body.push('q');
    } else if n != 0 {
        body.push_str(&format!("q^{n}"));
    }
    if r != 0 {
        if !body.is_empty() {
            body.push(' ');
        }
        if r == 1 {
            body.push('z');
        } else {
            body.push_str(&format!("z^{r}"));
        }
    }
    if body.is_empty() {
        format!("{c}")
    } else if c.is_one() {
        body
    } else if (-c).is_one() {
        format!("-{body}")
    } else {
        format!("{c}{body}")
    }
}

/// Renders the singular part in the conventional one-line form: the
/// `q^0` terms by decreasing elliptic exponent, then the deeper terms by
/// increasing row.
pub fn render_sing(sing: &SingularPart) -> String {
    let mut ordered: Vec<(i64, i64, &Coeff)> = Vec::new();
    let mut row0: Vec<(i64, &Coeff)> = sing
        .terms()
        .iter()
        .filter(|((n, _), _)| *n == 0)
        .map(|((_, r), c)| (*r, c))
        .collect();
    row0.sort_by_key(|(r, _)| -r);
    for (r, c) in row0 {
        ordered.push((0, r, c));
    }
    for ((n, r), c) in sing.terms().iter() {
        if *n > 0 {
            ordered.push((*n, *r, c));
        }
    }
    let mut out = String::new();
    for (n, r, c) in ordered {
        let t = term_string(c, n, r);
        if !out.is_empty() && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(&t);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn half_string(r: i64) -> String {
    if r % 2 == 0 {
        format!("{}", r / 2)
    } else {
        format!("{r}/2")
    }
}

/// Renders one surface of the divisor as its symmetric moment matrix,
/// `mult Hum[[n0, r0/2], [r0/2, N m0]]`.
pub fn render_surface(index: i64, n0: i64, r0: i64, m0: i64, mult: &Coeff) -> String {
    let h = half_string(r0);
    format!("{mult} Hum[[{n0},{h}],[{h},{}]]", index * m0)
}

/// Plain-text form of a report, one fact per line.
pub fn render_report_text(r: &VerifyReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "block a = [{}, {}, {}, {}]: index {}, weight {}\n",
        r.a[0], r.a[1], r.a[2], r.a[3], r.index, r.weight
    ));
    out.push_str(&format!(
        "leading monomial: A = {}, B = {}, C = {}, D0 = {}\n",
        r.leading.a, r.leading.b, r.leading.c, r.leading.d0
    ));
    out.push_str(&format!("Sing psi = {}\n", r.sing));
    out.push_str(&format!(
        "singular part complete: {}\n",
        if r.sing_complete { "yes" } else { "no" }
    ));
    out.push_str("divisor:\n");
    for line in &r.divisors {
        out.push_str(&format!("  {line}\n"));
    }
    if r.theta_block_divisors_only {
        out.push_str("  (theta-block divisors only)\n");
    }
    out.push_str(&format!(
        "rows compared: m <= {}, q-order <= {}\n",
        r.m_max, r.n_max
    ));
    match &r.first_mismatch {
        None if r.rows_equal => {
            out.push_str("lift rows equal product rows: yes\n");
        }
        Some(mm) => {
            out.push_str(&format!(
                "lift rows equal product rows: NO (first mismatch at m={}, n={}, r={}: lift {}, product {})\n",
                mm.m, mm.n, mm.r, mm.lift, mm.product
            ));
        }
        None => {
            out.push_str("lift rows equal product rows: NO\n");
        }
    }
    out
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::psi::psi_from_block;
    use crate::jacobi::{block_expand, block_from_a};
    use num::{BigInt, BigRational};

    fn rat(v: i64) -> Coeff {
        BigRational::from_integer(BigInt::from(v))
    }

    fn sing_string(a: [i64; 4]) -> String {
        let desc = block_from_a(a);
        let order = (desc.index() + 3) / 4;
        let theta = block_expand(&desc, 2 * (order + 1)).expect("expansion");
        let psi = psi_from_block(&desc, &theta, order).expect("companion");
        render_sing(&SingularPart::from_psi(&psi))
    }

    #[test]
    fn term_strings_fold_signs_and_units() {
        assert_eq!(term_string(&rat(4), 0, 0), "4");
        assert_eq!(term_string(&rat(1), 0, 4), "z^4");
        assert_eq!(term_string(&rat(4), 0, 1), "4z");
        assert_eq!(term_string(&rat(1), 1, 15), "q z^15");
        assert_eq!(term_string(&rat(2), 11, 47), "2q^11 z^47");
        assert_eq!(term_string(&rat(-1), 2, 3), "-q^2 z^3");
    }

    #[test]
    fn singular_part_renders_in_conventional_form() {
        assert_eq!(sing_string([1, 1, 1, 1]), "z^4+2z^3+3z^2+4z+4");
        assert_eq!(
            sing_string([1, 1, 1, 2]),
            "z^5+z^4+2z^3+3z^2+3z+4+q^6 z^30"
        );
    }

    #[test]
    fn surfaces_render_with_half_integer_entries() {
        assert_eq!(
            render_surface(37, 0, 1, 1, &rat(10)),
            "10 Hum[[0,1/2],[1/2,37]]"
        );
        assert_eq!(render_surface(37, 6, 30, 1, &rat(1)), "1 Hum[[6,15],[15,37]]");
        assert_eq!(render_surface(25, 0, 4, 1, &rat(1)), "1 Hum[[0,2],[2,25]]");
    }
}
