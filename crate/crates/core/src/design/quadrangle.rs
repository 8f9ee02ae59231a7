//! Candidate scalings for quadrangles, one per modulus case of the two
//! competing eigenvalues.
//!
//! The classical case table is reproduced, including entries that do not
//! type-check as written: unit-modulus eigenvalues have no circle center, and
//! the half-plane direction appears with the sign opposite to what the
//! inequality gives. Every such row therefore also emits repaired variants
//! (center taken from the eigenvalue that has one, direction `1 − μ̄`). None
//! of these values is trusted; the search validates each one against
//! [`direct_dominance`](super::region::direct_dominance).

use num_complex::Complex64;

use super::region::UNIT_MODULUS_TOLERANCE;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy)]
enum Class {
    /// `|μ| < 1`, with circle center `ω`.
    Inside(Complex64),
    /// `|μ| = 1`, with unit inward normal and the normal as printed in the table.
    Unit {
        normal: Complex64,
        printed: Complex64,
    },
    /// `|μ| > 1`, with circle center `ω`.
    Outside(Complex64),
    Empty,
}

fn classify(mu: Complex64) -> Class {
    if (mu - ONE).norm() <= UNIT_MODULUS_TOLERANCE {
        return Class::Empty;
    }
    let modulus = mu.norm();
    if (modulus - 1.0).abs() <= UNIT_MODULUS_TOLERANCE {
        let normal = ONE - mu.conj();
        return Class::Unit {
            normal: normal / normal.norm(),
            printed: mu.conj() - ONE,
        };
    }
    let omega = (ONE - mu.conj()) / (mu.norm_sqr() - 1.0);
    if modulus < 1.0 {
        Class::Inside(omega)
    } else {
        Class::Outside(omega)
    }
}

/// Candidate scalings for the competing pair `(μ₂, μ₃)`.
///
/// Both orderings of the pair are run through the table, since its mixed rows
/// are not symmetric. Returns an empty list when either eigenvalue equals 1.
pub fn quadrangle_case_lambda(mu2: Complex64, mu3: Complex64) -> Vec<Complex64> {
    let (a, b) = (classify(mu2), classify(mu3));
    if matches!(a, Class::Empty) || matches!(b, Class::Empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    table_row(a, b, &mut out);
    table_row(b, a, &mut out);
    let mut unique: Vec<Complex64> = Vec::with_capacity(out.len());
    for z in out {
        if z.is_finite() && !unique.contains(&z) {
            unique.push(z);
        }
    }
    unique
}

fn table_row(a: Class, b: Class, out: &mut Vec<Complex64>) {
    match (a, b) {
        (Class::Inside(wa), Class::Inside(wb)) => out.push(2.0 * (wa + wb)),

        (Class::Inside(wa), Class::Unit { normal, printed })
        | (Class::Unit { normal, printed }, Class::Inside(wa)) => {
            let r = wa.norm();
            out.push(3.0 * r * printed);
            out.push(-3.0 * r * printed);
            // Three radii along the inward normal clears the circle through 0.
            out.push(3.0 * r * normal);
        }

        (Class::Inside(wa), Class::Outside(wb)) | (Class::Outside(wa), Class::Inside(wb)) => {
            let (ra, rb) = (wa.norm(), wb.norm());
            let gap = wb - wa;
            let d = gap.norm();
            if d > 0.0 {
                let u = gap / d;
                out.push(wa + u * (d + rb + ra) / 2.0);
                out.push(wb - u * (d + rb + ra) / 2.0);
            }
            let (wi, wo) = match a {
                Class::Inside(_) => (wa, wb),
                _ => (wb, wa),
            };
            // Along the ray from the excluded disk's center through the
            // admissible disk's center: outside the first, inside the second.
            let (ri, ro) = (wi.norm(), wo.norm());
            let gap = wo - wi;
            let d = gap.norm();
            if d > 0.0 {
                let u = gap / d;
                let lo = ri.max(d - ro);
                let hi = d + ro;
                if lo < hi {
                    out.push(wi + u * (lo + hi) / 2.0);
                }
            }
        }

        (
            Class::Unit {
                normal: na,
                printed: pa,
            },
            Class::Unit {
                normal: nb,
                printed: pb,
            },
        ) => {
            out.push(pa + pb);
            out.push(-(pa + pb));
            out.push(na + nb);
        }

        (Class::Unit { normal, printed }, Class::Outside(w))
        | (Class::Outside(w), Class::Unit { normal, printed }) => {
            let r = w.norm();
            let printed_unit = printed / printed.norm();
            // Signed offset of the disk center along the normal; the disk
            // passes through 0 so the offset lies in [-r, r].
            let h = (w * normal.conj()).re;
            let x = h.abs();
            out.push(w + printed_unit * (x + x + r) / 2.0);
            out.push(w + normal * (x + x + r) / 2.0);
            out.push(w + normal * (r - h) / 2.0);
        }

        (Class::Outside(wa), Class::Outside(wb)) => {
            let (ra, rb) = (wa.norm(), wb.norm());
            let gap = wb - wa;
            let d = gap.norm();
            if d > 0.0 {
                out.push(wa + gap / d * (ra + d - rb) / 2.0);
            } else {
                out.push(wa);
            }
        }

        _ => {}
    }
}
