//! Reference low-genus free energies of both loop equations. `F_g` is written in the jets of `v`, `H_g` in the jets of
//! `w` (the `W` chart, where `w` alone denotes the logarithm of slot 0).

use crate::jetring::{parse_log_poly, Chart, JetError, LogExtendedPoly};

use super::models::LoopModel;

pub const F1: &str = "(1/24)*log(vx) + (1/12)*log(v)";

pub const F2: &str = "(1/576)*v4*v/vx^2 - (7/960)*v3*v2*v/vx^3 + (37/2880)*v3/vx + (1/180)*v2^3*v/vx^4 \
    - (11/960)*v2^2/vx^2 + (1/120)*v2/v - (1/120)*vx^2/v^2";

/// Genus three with one corrupted term, `v5/v` in place of `v5/vx`: that
/// term alone has x-weight 5 while every other term has weight 4. A negative
/// control for [`weight_defects`] and the numeric comparisons.
pub const F3_WEIGHT_DEFECT: &str = "(1/20736)*v7*v^2/vx^3 - (7/11520)*v6*v2*v^2/vx^4 + (91/103680)*v6*v/vx^2 \
    - (53/40320)*v5*v3*v^2/vx^4 + (353/80640)*v5*v2^2*v^2/vx^5 - (419/60480)*v5*v2*v/vx^3 \
    + (913/241920)*v5/v - (103/120960)*v4^2*v^2/vx^4 + (1273/80640)*v4*v3*v2*v^2/vx^5 \
    - (9169/725760)*v4*v3*v/vx^3 - (83/3780)*v4*v2^3*v^2/vx^6 + (545/16128)*v4*v2^2*v/vx^4 \
    - (3727/241920)*v4*v2/vx^2 + (1/1512)*v4/v + (59/16128)*v3^3*v^2/vx^5 \
    - (83/1792)*v3^2*v2^2*v^2/vx^6 + (97/2016)*v3^2*v2*v/vx^4 - (1669/145152)*v3^2/vx^2 \
    + (59/756)*v3*v2^4*v^2/vx^7 - (5555/48384)*v3*v2^3*v/vx^5 + (325/6912)*v3*v2^2/vx^3 \
    - (1/378)*v3*vx/v^2 - (5/162)*v2^6*v^2/vx^8 + (13/252)*v2^5*v/vx^6 - (193/8064)*v2^4/vx^4 \
    - (1/504)*v2^2/v^2 + (1/126)*v2*vx^2/v^3 - (1/252)*vx^4/v^4";

/// Genus three.
pub const F3: &str = "(1/20736)*v7*v^2/vx^3 - (7/11520)*v6*v2*v^2/vx^4 + (91/103680)*v6*v/vx^2 \
    - (53/40320)*v5*v3*v^2/vx^4 + (353/80640)*v5*v2^2*v^2/vx^5 - (419/60480)*v5*v2*v/vx^3 \
    + (913/241920)*v5/vx - (103/120960)*v4^2*v^2/vx^4 + (1273/80640)*v4*v3*v2*v^2/vx^5 \
    - (9169/725760)*v4*v3*v/vx^3 - (83/3780)*v4*v2^3*v^2/vx^6 + (545/16128)*v4*v2^2*v/vx^4 \
    - (3727/241920)*v4*v2/vx^2 + (1/1512)*v4/v + (59/16128)*v3^3*v^2/vx^5 \
    - (83/1792)*v3^2*v2^2*v^2/vx^6 + (97/2016)*v3^2*v2*v/vx^4 - (1669/145152)*v3^2/vx^2 \
    + (59/756)*v3*v2^4*v^2/vx^7 - (5555/48384)*v3*v2^3*v/vx^5 + (325/6912)*v3*v2^2/vx^3 \
    - (1/378)*v3*vx/v^2 - (5/162)*v2^6*v^2/vx^8 + (13/252)*v2^5*v/vx^6 - (193/8064)*v2^4/vx^4 \
    - (1/504)*v2^2/v^2 + (1/126)*v2*vx^2/v^3 - (1/252)*vx^4/v^4";

pub const H1: &str = "(1/24)*log(wx) + (1/8)*w";

pub const H2: &str = "-(1/1152)*w4/wx^2 + (7/1920)*w3*w2/wx^3 - (1/160)*w3/wx - (1/360)*w2^3/wx^4 \
    + (11/1920)*w2^2/wx^2 - (7/640)*w2 - (1/1440)*wx^2";

pub const H3: &str = "(1/82944)*w7/wx^3 - (7/46080)*w6*w2/wx^4 + (7/46080)*w6/wx^2 \
    - (53/161280)*w3*w5/wx^4 + (353/322560)*w5*w2^2/wx^5 - (383/322560)*w5*w2/wx^3 \
    + (41/64512)*w5/wx - (103/483840)*w4^2/wx^4 + (1273/322560)*w4*w3*w2/wx^5 \
    - (689/322560)*w4*w3/wx^3 - (83/15120)*w4*w2^3/wx^6 + (185/32256)*w4*w2^2/wx^4 \
    - (373/161280)*w4*w2/wx^2 + (185/193536)*w4 + (59/64512)*w3^3/wx^5 \
    - (83/7168)*w3^2*w2^2/wx^6 + (869/107520)*w3^2*w2/wx^4 - (61/35840)*w3^2/wx^2 \
    + (59/3024)*w3*w2^4/wx^7 - (9343/483840)*w3*w2^3/wx^5 + (151/23040)*w3*w2^2/wx^3 \
    - (19/120960)*w3*w2/wx + (41/120960)*w3*wx - (5/648)*w2^6/wx^8 + (131/15120)*w2^5/wx^6 \
    - (57/17920)*w2^4/wx^4 + (1/9072)*w2^3/wx^2 + (31/120960)*w2^2 - (1/90720)*wx^4";

/// Reference free energy of `model` at genus `g` (1 to 3), in the chart the
/// solver reports it in.
pub fn reference(model: LoopModel, g: u32) -> Option<Result<LogExtendedPoly, JetError>> {
    let (text, chart) = match (model, g) {
        (LoopModel::GfmV4, 1) => (F1, Chart::V),
        (LoopModel::GfmV4, 2) => (F2, Chart::V),
        (LoopModel::GfmV4, 3) => (F3, Chart::V),
        (LoopModel::Fvh, 1) => (H1, Chart::W),
        (LoopModel::Fvh, 2) => (H2, Chart::W),
        (LoopModel::Fvh, 3) => (H3, Chart::W),
        _ => return None,
    };
    Some(parse_log_poly(text, chart))
}

/// Terms of `p` whose x-weight `sum_s s e_s` differs from `weight`.
///
/// Genus-`g` free energies are homogeneous of weight `2g - 2` under
/// `x -> c x`, so any term listed here is suspect.
pub fn weight_defects(p: &LogExtendedPoly, weight: i64) -> Vec<String> {
    p.rational
        .terms()
        .filter(|(m, _)| m.exponents().iter().enumerate().map(|(s, &e)| s as i64 * e as i64).sum::<i64>() != weight)
        .map(|(m, c)| crate::jetring::text::poly_text(&crate::jetring::DiffPoly::term(c.clone(), m.clone()), Chart::V))
        .collect()
}
