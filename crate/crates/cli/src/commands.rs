//! One function per subcommand. Each fills in a report and returns an error
//! only when nothing sensible can be reported.

use steinhom::algebra::{
    cyclic_module, hochschild_complex, relative_hochschild_complex, steinberg_algebra, twisted_steinberg, Bimodule,
};
use steinhom::ep::{
    ep_groupoid_homology, graded_hochschild, k0, k1_pieces, kh_sequence_z, pseudo_freeness, UnitsPresentation,
};
use steinhom::groupoid::{
    burghelea_graded_compare, cyclic_nerve_module, hc_closed_form, homology_module, twisted_cyclic_nerve_complex,
    weight_submodule, Cocycle2,
};
use steinhom::{EpTuple, Error, FgAbelianGroup, FiniteGroupoid, FiniteTuple, Graph, Result, Ring};

use crate::instance::{parse_group, Instance, Payload};
use crate::report::Report;
use crate::Ctx;

pub const ELL: &str = "ℓ = k: chains are taken over the coefficient ring itself";

fn show(g: &FgAbelianGroup, ring: Ring) -> String {
    g.display_over(ring)
}

fn push_groups(r: &mut Report, prefix: &str, groups: &[FgAbelianGroup], ring: Ring, source: &str) {
    for (n, g) in groups.iter().enumerate() {
        r.result(format!("{prefix}_{n}"), show(g, ring), source);
    }
}

fn push_weighted(r: &mut Report, m: i64, groups: &[FgAbelianGroup], ring: Ring, source: &str) {
    for (n, g) in groups.iter().enumerate() {
        r.result(format!("HH_{n} (weight {m})"), show(g, ring), source);
    }
}

fn compare_groups(r: &mut Report, name: &str, a: &[FgAbelianGroup], b: &[FgAbelianGroup], ring: Ring) {
    for (n, (x, y)) in a.iter().zip(b).enumerate() {
        r.check(format!("{name}, degree {n}"), x == y, format!("{} vs {}", show(x, ring), show(y, ring)));
    }
}

fn wrong_kind(inst: &Instance, command: &str, wanted: &str) -> Error {
    Error::invalid(format!("{command} needs {wanted}, got a {} instance", inst.kind.as_str()))
}

/// The graph of a graph or tuple instance.
fn graph_of<'a>(inst: &'a Instance, command: &str) -> Result<&'a Graph> {
    match &inst.payload {
        Payload::Graph(g) => Ok(g),
        Payload::EpTuple(t) => Ok(t.graph()),
        _ => Err(wrong_kind(inst, command, "a graph or ep_tuple")),
    }
}

/// A graph is read as the tuple with trivial group.
fn tuple_of(inst: &Instance, command: &str) -> Result<EpTuple> {
    match &inst.payload {
        Payload::Graph(g) => Ok(EpTuple::Finite(FiniteTuple::trivial(g.clone()))),
        Payload::EpTuple(t) => Ok(t.clone()),
        _ => Err(wrong_kind(inst, command, "a graph or ep_tuple")),
    }
}

pub const BF_SOURCE: &str = "coker(I - A^t : Z^reg -> Z^(E^0)), Smith normal form";

pub fn bf(inst: &Instance, _ctx: &Ctx, r: &mut Report) -> Result<()> {
    let g = graph_of(inst, "bf")?;
    r.result("BF(E)", g.bowen_franks(), BF_SOURCE);
    r.note(format!("{} vertices, {} regular, {} edges", g.vertex_count(), g.regular().len(), g.edge_count()));
    Ok(())
}

pub const NERVE_SOURCE: &str = "bar complex of the nerve, Smith normal form";

pub fn groupoid_homology(g: &FiniteGroupoid, window: usize, ring: Ring) -> Vec<FgAbelianGroup> {
    homology_module(g, window, ring).0.hochschild_complex().homology_all()
}

pub fn homology(inst: &Instance, ctx: &Ctx, r: &mut Report) -> Result<()> {
    let ring = ctx.ring;
    if let Payload::Groupoid(g, w) = &inst.payload {
        r.assume("trivial coefficients");
        push_groups(r, "H", &groupoid_homology(g, ctx.window, ring), ring, NERVE_SOURCE);
        if w.is_some() {
            r.note("the cocycle plays no part in groupoid homology with trivial coefficients");
        }
        return Ok(());
    }
    let t = tuple_of(inst, "homology")?;
    r.assume(ELL);
    let pf = pseudo_freeness(&t);
    r.check("pseudo-free", pf.is_pseudo_free(), match pf.witness() {
        None => "proved by exhaustive search of the finite fixed-path automaton".to_string(),
        Some(w) => w.to_string(),
    });
    let h = ep_groupoid_homology(&t, ctx.window, ring)?;
    push_groups(r, "H", &h.groups, ring, &h.method);
    if let EpTuple::Integers(_) = t {
        r.note("for G = Z only degrees 0 and 1 are computed");
    }
    let trivial_c = match &t {
        EpTuple::Finite(f) => f.has_trivial_c(),
        EpTuple::Integers(z) => z.has_trivial_c(),
    };
    if trivial_c {
        let mut bf = t.graph().bowen_franks();
        if ring == Ring::Q {
            bf = bf.rationalize();
        }
        r.check("H_0 = BF(E) (x) k", h.groups[0] == bf, format!("{} vs {}", show(&h.groups[0], ring), show(&bf, ring)));
    }
    Ok(())
}

const CYC_SOURCE: &str = "cyclic nerve complex, Smith normal form";
const REL_SOURCE: &str = "relative Hochschild complex of the Steinberg algebra over its diagonal";

fn groupoid_hochschild(g: &FiniteGroupoid, w: Option<&Cocycle2>, ctx: &Ctx, r: &mut Report) -> Result<()> {
    let (ring, window) = (ctx.ring, ctx.window);
    if let Some(m) = ctx.weight {
        if w.is_some() {
            return Err(Error::invalid("weights are not supported together with a cocycle"));
        }
        let cyc = weight_submodule(g, window, m, ring)?.hochschild_complex().homology_all();
        push_weighted(r, m, &cyc, ring, "weight part of the cyclic nerve complex");
        let rows = burghelea_graded_compare(g, window, ring, m)?;
        for row in rows {
            r.check(
                format!("weight {m}, degree {}: centralizer decomposition", row.degree),
                row.equal,
                format!("{} vs {}", show(&row.cyclic, ring), show(&row.sum, ring)),
            );
        }
        return Ok(());
    }
    match w {
        Some(w) if !w.is_trivial() => {
            let cyc = twisted_cyclic_nerve_complex(g, w, window, ring)?.homology_all();
            push_groups(r, "HH", &cyc, ring, "twisted cyclic nerve complex, Smith normal form");
            let alg = twisted_steinberg(g, w, ring)?;
            let rel = relative_hochschild_complex(&alg, &Bimodule::regular(&alg), window)?.homology_all();
            compare_groups(r, "twisted Steinberg algebra, relative Hochschild complex", &cyc, &rel, ring);
        }
        _ => {
            let cyc = cyclic_nerve_module(g, window, ring).0.hochschild_complex().homology_all();
            push_groups(r, "HH", &cyc, ring, CYC_SOURCE);
            let alg = steinberg_algebra(g, ring);
            let rel = relative_hochschild_complex(&alg, &Bimodule::regular(&alg), window)?.homology_all();
            compare_groups(r, REL_SOURCE, &cyc, &rel, ring);
        }
    }
    Ok(())
}

pub const EP_HH_SOURCE: &str = "cone of 1 - sigma_m on vertexwise Hochschild chains of k[G]";

pub fn hochschild(inst: &Instance, ctx: &Ctx, r: &mut Report) -> Result<()> {
    let ring = ctx.ring;
    r.assume(ELL);
    match &inst.payload {
        Payload::Algebra(a) => {
            if ctx.weight.is_some() {
                return Err(Error::invalid("--weight needs a groupoid or ep_tuple instance"));
            }
            let hh = hochschild_complex(a, &Bimodule::regular(a), ctx.window)?.homology_all();
            push_groups(r, "HH", &hh, ring, "Hochschild complex on the structure constants, Smith normal form");
            Ok(())
        }
        Payload::Groupoid(g, w) => groupoid_hochschild(g, w.as_ref(), ctx, r),
        _ => {
            let t = tuple_of(inst, "hochschild")?;
            let f = t.as_finite()?;
            let weights: Vec<i64> = match ctx.weight {
                Some(m) => vec![m],
                None => vec![-1, 0, 1],
            };
            if ctx.weight.is_none() {
                r.note("weights -1, 0, 1 shown; pass --weight m for another weight");
            }
            for m in weights {
                let hh = graded_hochschild(f, m, ctx.window, ring)?;
                push_weighted(r, m, &hh.groups, ring, EP_HH_SOURCE);
            }
            Ok(())
        }
    }
}

pub const HC_SOURCE: &str = "total complex of the truncated CC bicomplex";

pub fn cyclic(inst: &Instance, ctx: &Ctx, r: &mut Report) -> Result<()> {
    let ring = ctx.ring;
    match &inst.payload {
        Payload::Groupoid(g, w) => {
            let (hmod, _) = homology_module(g, ctx.window, ring);
            let hc = hmod.cyclic_homology();
            push_groups(r, "HC(nerve)", &hc, ring, &format!("{HC_SOURCE} of the nerve module"));
            let h = hmod.hochschild_complex().homology_all();
            let closed: Vec<FgAbelianGroup> = (0..h.len()).map(|n| hc_closed_form(&h, n)).collect();
            compare_groups(r, "sum of H_(n-2i)", &hc, &closed, ring);
            let hc_alg = cyclic_nerve_module(g, ctx.window, ring).0.cyclic_homology();
            push_groups(r, "HC", &hc_alg, ring, &format!("{HC_SOURCE} of the cyclic nerve module"));
            if w.is_some() {
                r.note("the cocycle is ignored here; see the hochschild command for the twisted complex");
            }
            r.note("HN and HP are not totalized");
            Ok(())
        }
        Payload::Algebra(a) => {
            let hc = cyclic_module(a, ctx.window, false)?.0.cyclic_homology();
            push_groups(r, "HC", &hc, ring, &format!("{HC_SOURCE} of the algebra"));
            Ok(())
        }
        _ => Err(wrong_kind(inst, "cyclic", "a groupoid or algebra")),
    }
}

pub fn ktheory(inst: &Instance, ctx: &Ctx, r: &mut Report) -> Result<()> {
    let t = tuple_of(inst, "ktheory")?;
    r.assume("G is torsion-free (not checked)");
    r.assume("Farrell-Jones input groups supplied by user");
    r.assume(ELL);
    if let EpTuple::Finite(f) = &t {
        if f.group().order() > 1 {
            r.note(format!(
                "G has order {}, so the torsion-free hypothesis fails; values below are what the formulas give",
                f.group().order()
            ));
        }
    }
    let units = ctx.units.clone().unwrap_or_else(UnitsPresentation::integers);
    r.assume(format!("units of k presented as {} on generators {}", units.group()?, units.generators.join(", ")));
    r.result("K_0", k0(&t), BF_SOURCE);
    let p = k1_pieces(&t, &units)?;
    r.result("K_1 sub", &p.coker, "coker(I - D^t) on U^reg + G_ab^reg");
    r.result("K_1 quotient", &p.ker, "ker(I - A^t) on Z^reg");
    r.note("K_1 is an extension of the quotient by the sub; the extension is not computed");
    if let Some(list) = &inst.options.k_groups {
        let ks = list.iter().map(|s| parse_group(s)).collect::<Result<Vec<_>>>()?;
        for (n, k) in ks.iter().enumerate() {
            r.assume(format!("K_{n}(ℓ) = {k}"));
        }
        match kh_sequence_z(&t, &ks) {
            Ok(levels) => {
                let src = "blockwise coker and ker of I - A^t and I - B^t on K_*(ℓ)";
                for l in levels {
                    let n = l.degree;
                    r.result(format!("KH_{n} coker A"), &l.coker_a, src);
                    r.result(format!("KH_{n} coker B"), &l.coker_b, src);
                    r.result(format!("KH_{n} ker A"), &l.ker_a, src);
                    r.result(format!("KH_{n} ker B"), &l.ker_b, src);
                }
                r.note("KH_n is an extension of ker A + ker B by coker A + coker B");
            }
            Err(Error::Refused { reason, witness }) => {
                r.note(format!("KH pieces refused: {reason} ({witness}); the K_1 pieces above still apply"));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
