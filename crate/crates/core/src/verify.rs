//! The verification catalogue: every exact equality the engine is expected
//! to reproduce, grouped into numbered criteria and run at a chosen depth.

use crate::epsops::{EpsSeries, SymbolOp};
use crate::hierarchy::{
    apply_poisson, check_commutativity, comb_identity_check, dispersionless_match, hamiltonian, miura_volterra_verify,
    qkdv_flow, recursion_apply, second_hamiltonian, FlowIndex, PoissonOp,
};
use crate::invariants;
use crate::jetring::{int, rat};
use crate::loopeq::{
    compare_f_h, fixtures, matches_reference, quasimiura_verify, solve_through, verify_linearization_identities,
    GenusSolution, LoopModel,
};

/// Truncation depths for one verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Depth {
    /// ε-order of the explicit flow displays.
    pub flow_order: usize,
    /// ε-order of the Hamiltonian, recursion and commutativity checks.
    pub structure_order: usize,
    /// ε-order of the Volterra link.
    pub volterra_order: usize,
    /// ε-order of the quasi-Miura residual.
    pub quasi_order: usize,
    pub genus: u32,
    /// Cases per randomized suite.
    pub cases: u32,
}

impl Depth {
    /// The full acceptance depth.
    pub fn full() -> Self {
        Depth {
            flow_order: 8,
            structure_order: 6,
            volterra_order: 4,
            quasi_order: 4,
            genus: 3,
            cases: invariants::CASES,
        }
    }

    /// Depth derived from a single ε-order and a top genus; no check runs
    /// deeper than at full depth.
    pub fn scaled(eps: usize, genus: u32) -> Self {
        let full = Self::full();
        Depth {
            flow_order: eps,
            structure_order: eps.min(full.structure_order),
            volterra_order: eps.min(full.volterra_order),
            quasi_order: eps.min(2 * genus as usize).min(full.quasi_order),
            genus,
            cases: full.cases,
        }
    }
}

/// Which checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Criteria 1 to 11: the exact formulas.
    Formulas,
    /// Criterion 12: the randomized invariant suites.
    Properties,
    All,
}

/// Outcome of one criterion: `Ok(detail)` or `Err(reason)`.
pub type Outcome = Result<String, String>;

type Check = Box<dyn Fn(&Depth, &mut Solutions) -> Outcome>;
type Provider = Box<dyn FnMut(LoopModel, u32) -> Result<Vec<GenusSolution>, String>>;
type Display = fn(usize) -> Result<EpsSeries, String>;

/// One numbered check of the catalogue.
pub struct Criterion {
    pub number: usize,
    pub name: &'static str,
    run: Check,
}

impl Criterion {
    pub fn run(&self, depth: &Depth, sols: &mut Solutions) -> Outcome {
        (self.run)(depth, sols)
    }
}

/// Genus solutions shared between criteria, solved on first use.
#[derive(Default)]
pub struct Solutions {
    gfm: Option<Vec<GenusSolution>>,
    fvh: Option<Vec<GenusSolution>>,
    provider: Option<Provider>,
}

impl Solutions {
    /// Solutions come from `provider` instead of a fresh solve (the CLI
    /// passes its cache here).
    pub fn with_provider(provider: impl FnMut(LoopModel, u32) -> Result<Vec<GenusSolution>, String> + 'static) -> Self {
        Solutions { gfm: None, fvh: None, provider: Some(Box::new(provider)) }
    }

    pub fn get(&mut self, model: LoopModel, genus: u32) -> Result<&[GenusSolution], String> {
        let slot = match model {
            LoopModel::GfmV4 => &mut self.gfm,
            LoopModel::Fvh => &mut self.fvh,
        };
        if slot.as_ref().is_none_or(|s| s.len() < genus as usize) {
            let sols = match &mut self.provider {
                Some(p) => p(model, genus)?,
                None => solve_through(model, genus).map_err(err)?,
            };
            *slot = Some(sols);
        }
        Ok(&slot.as_ref().expect("filled above")[..genus as usize])
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn expect(name: &str, ours: &EpsSeries, display: &EpsSeries) -> Result<(), String> {
    let diff = ours - display;
    match diff.coeffs().iter().position(|c| !c.is_zero()) {
        None => Ok(()),
        Some(k) => Err(format!("{name} differs at eps^{k}")),
    }
}

fn shifted(n: usize, k: i64) -> EpsSeries {
    EpsSeries::field(n).shift(&int(k))
}

// Displays built from shift symbols only, independently of the Lax
// machinery. Each is ε U_t at one order more, then divided by ε.

/// `4U (Λ-1)/(Λ+1) U`.
fn display_t10(order: usize) -> Result<EpsSeries, String> {
    let n = order + 1;
    let u = EpsSeries::field(n);
    let t = u.apply_symbol(&SymbolOp::tanh_half(n)).map_err(err)?;
    (&u * &t).scale(&int(4)).div_eps().map_err(err)
}

/// `(32/3) U (Λ-1)/(Λ+1) U Λ/(Λ+1) ((Λ+1)^{-1} U)^2`.
fn display_t11(order: usize) -> Result<EpsSeries, String> {
    let n = order + 1;
    let u = EpsSeries::field(n);
    let half = SymbolOp::inv_shift_plus_one(n);
    let a = u.apply_symbol(&half).map_err(err)?;
    let b = (&a * &a).apply_symbol(&half).map_err(err)?.shift(&int(1));
    let c = (&u * &b).apply_symbol(&SymbolOp::tanh_half(n)).map_err(err)?;
    (&u * &c).scale(&rat(32, 3)).div_eps().map_err(err)
}

/// `(1/4)(1/U^+ - 1/U^-)`.
fn display_t0m1(order: usize) -> Result<EpsSeries, String> {
    let n = order + 1;
    let up = shifted(n, 1).invert().map_err(err)?;
    let dn = shifted(n, -1).invert().map_err(err)?;
    (&up - &dn).scale(&rat(1, 4)).div_eps().map_err(err)
}

/// `-(1/16)(1/(U^{++}U^+U^+) + 1/(U^+U^+U) - 1/(U U^-U^-) - 1/(U^-U^-U^{--}))`.
fn display_t0m2(order: usize) -> Result<EpsSeries, String> {
    let n = order + 1;
    let inv_prod = |ks: [i64; 3]| {
        let p = ks.iter().fold(EpsSeries::one(n), |acc, &k| &acc * &shifted(n, k));
        p.invert().map_err(err)
    };
    let plus = &inv_prod([2, 1, 1])? + &inv_prod([1, 1, 0])?;
    let minus = &inv_prod([0, -1, -1])? + &inv_prod([-1, -1, -2])?;
    (&plus - &minus).scale(&rat(-1, 16)).div_eps().map_err(err)
}

fn free_energies(model: LoopModel, d: &Depth, sols: &mut Solutions) -> Outcome {
    let sols = sols.get(model, d.genus)?;
    let mut parts = Vec::new();
    for s in sols {
        if fixtures::reference(model, s.genus).is_some() {
            parts.push(format!("g={} {}", s.genus, matches_reference(s).map_err(err)?.detail));
        } else {
            parts.push(format!("g={} solved (no reference)", s.genus));
        }
    }
    Ok(parts.join("; "))
}

fn f_vs_h(d: &Depth, sols: &mut Solutions) -> Outcome {
    let f = sols.get(LoopModel::GfmV4, d.genus)?.to_vec();
    let h = sols.get(LoopModel::Fvh, d.genus)?;
    Ok(compare_f_h(&f, h).map_err(err)?.detail)
}

fn flows(d: &Depth) -> Outcome {
    let k = d.flow_order;
    let cases: [(FlowIndex, Display); 4] = [
        (FlowIndex::T1(0), display_t10),
        (FlowIndex::T1(1), display_t11),
        (FlowIndex::T0Neg(1), display_t0m1),
        (FlowIndex::T0Neg(2), display_t0m2),
    ];
    for (idx, display) in cases {
        let ours = qkdv_flow(idx, k).map_err(err)?;
        expect(&idx.to_string(), &ours, &display(k)?)?;
    }
    Ok(format!("t1,0 t1,1 t0,-1 t0,-2 equal their displays through eps^{k}"))
}

fn dispersionless() -> Outcome {
    let mut idxs: Vec<FlowIndex> = (0..=3).map(FlowIndex::T1).collect();
    idxs.extend((1..=3).map(FlowIndex::T0Neg));
    idxs.extend((0..=2).map(FlowIndex::T0));
    for idx in &idxs {
        dispersionless_match(*idx).map_err(err)?;
    }
    Ok(format!("{} flows match closed forms and principal flows", idxs.len()))
}

fn hamiltonian_structure(d: &Depth) -> Outcome {
    let k = d.structure_order;
    let p1 = PoissonOp::p1(k).map_err(err)?;
    let p2 = PoissonOp::p2(k).map_err(err)?;
    let mut idxs: Vec<FlowIndex> = (0..=2).map(FlowIndex::T1).collect();
    idxs.extend((1..=2).map(FlowIndex::T0Neg));
    for idx in &idxs {
        let flow = qkdv_flow(*idx, k).map_err(err)?;
        let h = hamiltonian(*idx, k).map_err(err)?;
        expect(&format!("P1 form of {idx}"), &apply_poisson(&p1, &h.gradient).map_err(err)?, &flow)?;
        let g = second_hamiltonian(*idx, k).map_err(err)?;
        expect(&format!("P2 form of {idx}"), &apply_poisson(&p2, &g.gradient).map_err(err)?, &flow)?;
    }
    for p in 1..=2u32 {
        let prev = qkdv_flow(FlowIndex::T0(p - 1), k).map_err(err)?;
        let next = qkdv_flow(FlowIndex::T0(p), k).map_err(err)?;
        let lhs = recursion_apply(&prev).map_err(err)?;
        expect(&format!("recursion to t0,{p}"), &lhs, &next.scale(&int(p as i64)))?;
    }
    Ok(format!("P1 and P2 forms of {} flows, two recursion steps, through eps^{k}", idxs.len()))
}

fn commutativity(d: &Depth) -> Outcome {
    let k = d.structure_order;
    let idxs = [
        FlowIndex::T1(0),
        FlowIndex::T1(1),
        FlowIndex::T0Neg(1),
        FlowIndex::T0Neg(2),
        FlowIndex::T0(0),
        FlowIndex::T0(1),
    ];
    let mut pairs = 0;
    for (i, a) in idxs.iter().enumerate() {
        for b in &idxs[i + 1..] {
            check_commutativity(*a, *b, k).map_err(err)?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs commute through eps^{k}"))
}

fn quasi_miura(d: &Depth, sols: &mut Solutions) -> Outcome {
    let f = sols.get(LoopModel::GfmV4, d.genus)?;
    for idx in [FlowIndex::T1(0), FlowIndex::T0Neg(1)] {
        quasimiura_verify(idx, f, d.quasi_order).map_err(err)?;
    }
    Ok(format!("t1,0 and t0,-1 residuals vanish through eps^{} with genus <= {}", d.quasi_order, d.genus))
}

fn volterra(d: &Depth) -> Outcome {
    let reports = miura_volterra_verify(d.volterra_order).map_err(err)?;
    let names: Vec<String> = reports.iter().map(|r| r.name.clone()).collect();
    Ok(format!("{} through eps^{}", names.join("; "), d.volterra_order))
}

fn linearization(d: &Depth, sols: &mut Solutions) -> Outcome {
    verify_linearization_identities(sols.get(LoopModel::Fvh, d.genus)?).map_err(err)?;
    Ok(verify_linearization_identities(sols.get(LoopModel::GfmV4, d.genus)?).map_err(err)?.detail)
}

fn property_suites(d: &Depth) -> Outcome {
    let mut names = Vec::new();
    for (name, suite) in invariants::suites() {
        suite(d.cases).map_err(|e| format!("{name}: {e}"))?;
        names.push(name);
    }
    Ok(format!("{} suites x {} cases: {}", names.len(), d.cases, names.join(", ")))
}

fn criterion(
    number: usize,
    name: &'static str,
    run: impl Fn(&Depth, &mut Solutions) -> Outcome + 'static,
) -> Criterion {
    Criterion { number, name, run: Box::new(run) }
}

/// The criteria of `suite`, in report order.
pub fn catalogue(suite: Suite) -> Vec<Criterion> {
    let mut out = Vec::new();
    if suite != Suite::Properties {
        out.push(criterion(1, "GFM free energies", |d, s| free_energies(LoopModel::GfmV4, d, s)));
        out.push(criterion(2, "FVH free energies", |d, s| free_energies(LoopModel::Fvh, d, s)));
        out.push(criterion(3, "F_g vs H_g", f_vs_h));
        out.push(criterion(4, "explicit flows", |d, _| flows(d)));
        out.push(criterion(5, "dispersionless limits", |_, _| dispersionless()));
        out.push(criterion(6, "Hamiltonian structure", |d, _| hamiltonian_structure(d)));
        out.push(criterion(7, "commutativity", |d, _| commutativity(d)));
        out.push(criterion(8, "quasi-Miura", quasi_miura));
        out.push(criterion(9, "Volterra link", |d, _| volterra(d)));
        out.push(criterion(10, "double-factorial identity", |_, _| Ok(comb_identity_check(30).map_err(err)?.detail)));
        out.push(criterion(11, "linearization identities", linearization));
    }
    if suite != Suite::Formulas {
        out.push(criterion(12, "property suites", |d, _| property_suites(d)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetring::DiffPoly;

    #[test]
    fn scaled_depth_never_exceeds_full() {
        let d = Depth::scaled(4, 2);
        assert_eq!((d.flow_order, d.structure_order, d.volterra_order, d.quasi_order), (4, 4, 4, 4));
        let d = Depth::scaled(8, 1);
        assert_eq!((d.structure_order, d.quasi_order), (6, 2));
        assert_eq!(Depth::scaled(8, 3), Depth::full());
    }

    #[test]
    fn catalogue_partitions() {
        let numbers = |s| catalogue(s).iter().map(|c| c.number).collect::<Vec<_>>();
        assert_eq!(numbers(Suite::All), (1..=12).collect::<Vec<_>>());
        assert_eq!(numbers(Suite::Formulas), (1..=11).collect::<Vec<_>>());
        assert_eq!(numbers(Suite::Properties), vec![12]);
    }

    #[test]
    fn flow_displays_at_low_order() {
        flows(&Depth::scaled(2, 1)).unwrap();
        // leading term of 4U tanh(ε∂/2)U / ε
        let uux = (&DiffPoly::var(0) * &DiffPoly::var(1)).scale(&int(2));
        assert_eq!(display_t10(2).unwrap().coeff(0), &uux);
    }

    #[test]
    fn shared_solutions_grow_on_demand() {
        let mut s = Solutions::default();
        assert_eq!(s.get(LoopModel::GfmV4, 1).unwrap().len(), 1);
        assert_eq!(s.get(LoopModel::GfmV4, 2).unwrap().len(), 2);
        assert_eq!(s.get(LoopModel::GfmV4, 1).unwrap().len(), 1);
    }
}
