//! Verification suites over the bundled corpus. Each compares two
//! independently computed answers, or a computed answer with a closed form.

use std::collections::BTreeMap;

use steinhom::algebra::{
    basis_elem, hochschild_complex, kappa_check, mu_comparison, relative_hochschild_complex, twisted_steinberg,
    Bimodule, Elem, FinDimAlgebra, SkewLaurent,
};
use steinhom::ep::{
    brute_force_strongly_fixed, ep_groupoid_homology, graded_hochschild, iv_closed_form, iv_iterated, iv_kernel, k0,
    k1_pieces, kh_sequence_z, pseudo_freeness, tau_factorization_check, UnitsPresentation,
};
use steinhom::groupoid::{burghelea_compare, cyclic_nerve, hc_closed_form, homology_module, nerve, twisted_cyclic_nerve_complex};
use steinhom::scalar::{rat, Rational};
use steinhom::{EpTuple, Error, FgAbelianGroup, Result, Ring};

use crate::commands::groupoid_homology;
use crate::corpus;
use crate::instance::{parse_file, parse_group, Instance, Payload};
use crate::report::Report;
use crate::DEFAULT_WINDOW;

pub const SUITES: &[&str] = &[
    "bf",
    "mu",
    "burghelea",
    "hc",
    "principal",
    "ep-hochschild",
    "ep-homology",
    "pseudofree",
    "iv",
    "kappa",
    "twisted",
    "ktheory",
];

pub const GROUPOIDS: &[&str] = &["point", "pair2", "pair3", "z2", "z3", "s3", "union"];

/// Pseudo-free tuples with trivial `c`.
pub const PSEUDO_FREE: &[&str] = &[
    "ep_rose1",
    "ep_rose2",
    "ep_rose3",
    "ep_edge",
    "ep_golden",
    "ep_cohn_rose1",
    "z2_swap",
    "z2_swap_phi",
    "z2_fixed_phi",
    "z2_double_swap",
    "z3_rotate",
    "s3_regular",
];

/// Loads a bundled instance under its own ring option.
pub fn load(name: &str) -> Result<Instance> {
    let text = corpus::lookup(name).ok_or_else(|| Error::invalid(format!("no bundled instance {name:?}")))?;
    let file = parse_file(text)?;
    let ring = match &file.options.ring {
        Some(s) => s.parse()?,
        None => Ring::Z,
    };
    file.load(ring)
}

fn tuple(name: &str) -> Result<EpTuple> {
    match load(name)?.payload {
        Payload::EpTuple(t) => Ok(t),
        _ => Err(Error::invalid(format!("{name} is not an ep_tuple"))),
    }
}

fn show_all(gs: &[FgAbelianGroup], ring: Ring) -> String {
    gs.iter().map(|g| g.display_over(ring)).collect::<Vec<_>>().join(", ")
}

/// `|det|` by fraction-free elimination; only used on small matrices.
fn abs_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else { return 0 };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]).abs()
}

fn group_order(g: &FgAbelianGroup) -> Option<i128> {
    if g.free_rank() > 0 {
        return None;
    }
    g.torsion().iter().map(|t| i128::try_from(t).ok()).product()
}

fn suite_bf(r: &mut Report, _window: usize) -> Result<()> {
    for n in 1..=6usize {
        let Payload::Graph(g) = load(&format!("rose{n}"))?.payload else { unreachable!("roses are graphs") };
        let want = if n == 1 { FgAbelianGroup::free(1) } else { FgAbelianGroup::cyclic(n as u64 - 1) };
        let got = g.bowen_franks();
        r.check(format!("bf/rose{n}"), got == want, format!("{got}, expected {want}"));
    }
    for name in ["golden", "cuntz_pair"] {
        let Payload::Graph(g) = load(name)?.payload else { unreachable!("graph instance") };
        let m = g.i_minus_at();
        let dense: Vec<Vec<i128>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| i128::try_from(&m.get(i, j)).expect("small entries")).collect())
            .collect();
        let det = abs_det(&dense);
        let bf = g.bowen_franks();
        let ok = match group_order(&bf) {
            Some(o) => o == det,
            None => det == 0,
        };
        r.check(format!("bf/{name}"), ok, format!("{bf}, |det(I - A^t)| = {det}"));
    }
    Ok(())
}

fn groupoid(name: &str) -> Result<steinhom::FiniteGroupoid> {
    match load(name)?.payload {
        Payload::Groupoid(g, _) => Ok(g),
        _ => Err(Error::invalid(format!("{name} is not a groupoid"))),
    }
}

fn suite_mu(r: &mut Report, window: usize) -> Result<()> {
    for name in GROUPOIDS {
        let cert = mu_comparison(&groupoid(name)?, window - 1)?;
        let ranks: Vec<String> = cert.degrees.iter().map(|d| d.rank.to_string()).collect();
        r.check(format!("mu/{name}"), cert.holds(), format!("bijective and compatible, ranks {}", ranks.join(", ")));
    }
    Ok(())
}

fn suite_burghelea(r: &mut Report, window: usize) -> Result<()> {
    for name in GROUPOIDS {
        let rows = burghelea_compare(&groupoid(name)?, window, Ring::Z);
        let cyc: Vec<FgAbelianGroup> = rows.iter().map(|x| x.cyclic.clone()).collect();
        let sum: Vec<FgAbelianGroup> = rows.iter().map(|x| x.sum.clone()).collect();
        r.check(
            format!("burghelea/{name}"),
            rows.iter().all(|x| x.equal),
            format!("HH: {} | H + centralizers: {}", show_all(&cyc, Ring::Z), show_all(&sum, Ring::Z)),
        );
    }
    Ok(())
}

fn suite_hc(r: &mut Report, window: usize) -> Result<()> {
    for name in GROUPOIDS {
        let (m, _) = homology_module(&groupoid(name)?, window, Ring::Z);
        let hc = m.cyclic_homology();
        let h = m.hochschild_complex().homology_all();
        let closed: Vec<FgAbelianGroup> = (0..h.len()).map(|n| hc_closed_form(&h, n)).collect();
        r.check(
            format!("hc/{name}"),
            hc == closed,
            format!("HC: {} | sum of H_(n-2i): {}", show_all(&hc, Ring::Z), show_all(&closed, Ring::Z)),
        );
    }
    Ok(())
}

fn suite_principal(r: &mut Report, window: usize) -> Result<()> {
    for name in ["point", "pair2", "pair3"] {
        let g = groupoid(name)?;
        let cyc: Vec<usize> = (0..=window).map(|n| cyclic_nerve(&g, n).len()).collect();
        let ner: Vec<usize> = (0..=window).map(|n| nerve(&g, n).len()).collect();
        r.check(format!("principal/{name} ranks"), g.is_principal() && cyc == ner, format!("{cyc:?} vs {ner:?}"));
        let h = groupoid_homology(&g, window, Ring::Z);
        let ok = h[0] == FgAbelianGroup::free(1) && h[1..].iter().all(FgAbelianGroup::is_trivial);
        r.check(format!("principal/{name} homology"), ok, show_all(&h, Ring::Z));
    }
    Ok(())
}

fn suite_ep_hochschild(r: &mut Report, window: usize) -> Result<()> {
    let w = window.min(3);
    for name in PSEUDO_FREE {
        let inst = load(name)?;
        let Payload::EpTuple(t) = &inst.payload else { unreachable!("tuple instance") };
        let f = t.as_finite()?;
        let ring = match &inst.options.ring {
            Some(s) => s.parse()?,
            None => Ring::Z,
        };
        let mut shown = Vec::new();
        let mut by_weight = BTreeMap::new();
        for m in -1..=1i64 {
            let hh = graded_hochschild(f, m, w, ring)?;
            shown.push(format!("m={m}: {}", show_all(&hh.groups, ring)));
            by_weight.insert(m, hh.groups);
        }
        let sym = f.group().order() > 1 || by_weight[&1] == by_weight[&-1];
        r.check(format!("ep-hochschild/{name}"), sym, shown.join(" | "));
    }
    // the Cohn graph of the 1-rose over Q
    let t = tuple("ep_cohn_rose1")?;
    let f = t.as_finite()?;
    for m in -2..=2i64 {
        let hh = graded_hochschild(f, m, 3, Ring::Q)?;
        let want = if m == 0 { ["Q", "0", "0"] } else { ["Q", "Q", "0"] };
        let got: Vec<String> = hh.groups.iter().map(|g| g.display_over(Ring::Q)).collect();
        r.check(format!("ep-hochschild/cohn rose1 over Q, m={m}"), got == want, got.join(", "));
    }
    Ok(())
}

fn suite_ep_homology(r: &mut Report, window: usize) -> Result<()> {
    for name in PSEUDO_FREE {
        let t = tuple(name)?;
        let h = ep_groupoid_homology(&t, window, Ring::Z)?;
        let bf = t.graph().bowen_franks();
        r.check(
            format!("ep-homology/{name} H_0"),
            h.groups[0] == bf,
            format!("cone: {} | BF(E): {bf}", show_all(&h.groups, Ring::Z)),
        );
        if let EpTuple::Finite(f) = &t {
            let ok = tau_factorization_check(f, 2)?;
            r.check(format!("ep-homology/{name} tau factors through sigma_0"), ok.iter().all(|&b| b), format!("{ok:?}"));
        }
    }
    match ep_groupoid_homology(&tuple("z2_trivial")?, window, Ring::Z) {
        Err(Error::Refused { witness, .. }) => r.check("ep-homology/z2_trivial refused", true, witness),
        other => r.check("ep-homology/z2_trivial refused", false, format!("{:?}", other.map(|h| h.groups))),
    }
    Ok(())
}

pub const BRUTE_FORCE_LENGTH: usize = 6;

fn suite_pseudofree(r: &mut Report, _window: usize) -> Result<()> {
    for name in corpus::names() {
        let inst = match load(name) {
            Ok(i) => i,
            Err(_) => continue,
        };
        let Payload::EpTuple(t) = &inst.payload else { continue };
        let pf = pseudo_freeness(t);
        let brute = brute_force_strongly_fixed(t, BRUTE_FORCE_LENGTH);
        let ok = match (pf.witness(), &brute) {
            (None, None) => true,
            (Some(w), Some(b)) => w.length == b.length,
            (Some(w), None) => w.length > BRUTE_FORCE_LENGTH,
            (None, Some(_)) => false,
        };
        let detail = match pf.witness() {
            None => "pseudo-free".to_string(),
            Some(w) => w.to_string(),
        };
        r.check(format!("pseudofree/{name}"), ok, detail);
    }
    let trivial = pseudo_freeness(&tuple("z2_trivial")?);
    let edge_witness = trivial.witness().is_some_and(|w| w.length == 1);
    r.check(
        "pseudofree/z2_trivial has an edge witness",
        edge_witness,
        trivial.witness().map_or_else(|| "none".into(), ToString::to_string),
    );
    r.check("pseudofree/z2_swap accepted", pseudo_freeness(&tuple("z2_swap")?).is_pseudo_free(), "");
    Ok(())
}

/// `|S_d| - (1 + (d - 1)^2)`: the kernel of `k[S_d] -> End(k^d)`.
pub fn permutation_kernel_dim(d: usize) -> usize {
    let order: usize = (1..=d).product();
    order - (1 + (d - 1) * (d - 1))
}

fn suite_iv(r: &mut Report, _window: usize) -> Result<()> {
    for (name, d) in [("s3_parallel", 3), ("s4_parallel", 4)] {
        let t = tuple(name)?;
        let f = t.as_finite()?;
        let rep = iv_kernel(f, 0, 1);
        let want = permutation_kernel_dim(d);
        r.check(format!("iv/{name} dim I_v"), rep.rank == want, format!("{}, expected {want}", rep.rank));
        let ng = f.group().order();
        let agree = (0..=3).all(|n| {
            (0..ng).all(|g| {
                let coeffs: Vec<Rational> = (0..ng).map(|h| rat(if h == g { 1 } else if h == (g + 1) % ng { -2 } else { 0 })).collect();
                iv_closed_form(f, 0, n, &coeffs) == iv_iterated(f, 0, n, &coeffs)
            })
        });
        r.check(format!("iv/{name} closed form = iterated maps"), agree, "steps 0..3");
    }
    Ok(())
}

pub fn q_times_q() -> Result<FinDimAlgebra> {
    let e = |i| basis_elem(i);
    FinDimAlgebra::new(
        Ring::Q,
        vec!["e1".into(), "e2".into()],
        vec![vec![e(0), Elem::new()], vec![Elem::new(), e(1)]],
        vec![0, 1],
    )
}

pub fn m2_q() -> Result<FinDimAlgebra> {
    match load("m2q")?.payload {
        Payload::Algebra(a) => Ok(a),
        _ => Err(Error::invalid("m2q is not an algebra")),
    }
}

/// `sum coefficient * E_ij` in the basis `E11, E12, E21, E22`.
pub fn m2_elem(entries: [[i64; 2]; 2]) -> Elem {
    let mut out = Elem::new();
    for (i, row) in entries.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                out.insert(2 * i + j, rat(v));
            }
        }
    }
    out
}

pub const KAPPA_SAMPLES: usize = 100;
pub const KAPPA_DEGREE: usize = 3;

fn suite_kappa(r: &mut Report, _window: usize) -> Result<()> {
    let qq = q_times_q()?;
    let swap = SkewLaurent::new(&qq, vec![basis_elem(1), basis_elem(0)])?;
    let cert = kappa_check(&swap, KAPPA_SAMPLES, KAPPA_DEGREE, 1);
    r.check("kappa/QxQ swap", cert.holds(), cert.witness.unwrap_or_else(|| format!("{KAPPA_SAMPLES} chains")));
    let m2 = m2_q()?;
    for (name, u, u_inv, seed) in [
        ("kappa/M2(Q) conj [[0,1],[1,0]]", [[0, 1], [1, 0]], [[0, 1], [1, 0]], 2),
        ("kappa/M2(Q) conj [[1,1],[0,1]]", [[1, 1], [0, 1]], [[1, -1], [0, 1]], 3),
    ] {
        let s = SkewLaurent::conjugation(&m2, &m2_elem(u), &m2_elem(u_inv))?;
        let cert = kappa_check(&s, KAPPA_SAMPLES, KAPPA_DEGREE, seed);
        r.check(name, cert.holds(), cert.witness.unwrap_or_else(|| format!("{KAPPA_SAMPLES} chains")));
    }
    Ok(())
}

pub const TWISTED_FROZEN: [&str; 3] = ["Z^2", "(Z/2)^2", "0"];

fn suite_twisted(r: &mut Report, _window: usize) -> Result<()> {
    let inst = load("z2_twisted")?;
    let Payload::Groupoid(g, Some(w)) = &inst.payload else {
        return Err(Error::invalid("z2_twisted carries no cocycle"));
    };
    let nerve_side = twisted_cyclic_nerve_complex(g, w, 3, Ring::Z)?.homology_all();
    let alg = twisted_steinberg(g, w, Ring::Z)?;
    let steinberg_side = relative_hochschild_complex(&alg, &Bimodule::regular(&alg), 3)?.homology_all();
    let Payload::Algebra(gauss) = load("gaussian")?.payload else { unreachable!("algebra instance") };
    let gauss_side = hochschild_complex(&gauss, &Bimodule::regular(&gauss), 3)?.homology_all();
    for (label, side) in [
        ("twisted cyclic nerve", &nerve_side),
        ("twisted Steinberg, relative", &steinberg_side),
        ("Z[i], absolute", &gauss_side),
    ] {
        let shown: Vec<String> = side.iter().map(ToString::to_string).collect();
        r.check(format!("twisted/{label}"), shown == TWISTED_FROZEN, shown.join(", "));
    }
    Ok(())
}

fn suite_ktheory(r: &mut Report, _window: usize) -> Result<()> {
    let units_z = UnitsPresentation::integers();
    let units_z2z = UnitsPresentation::from_json(corpus::lookup("units_z2_plus_z").expect("bundled"))?;
    for (name, units, want) in [
        ("ep_rose2", &units_z, ["0", "0", "0"]),
        ("ep_rose3", &units_z2z, ["Z/2", "(Z/2)^2", "0"]),
        ("ep_rose1", &units_z, ["Z", "Z/2", "Z"]),
    ] {
        let t = tuple(name)?;
        let p = k1_pieces(&t, units)?;
        let got = [k0(&t).to_string(), p.coker.to_string(), p.ker.to_string()];
        r.check(format!("ktheory/{name} K_0, K_1 pieces"), got == want, got.join(", "));
    }
    let ks: Vec<FgAbelianGroup> = ["Z", "Z/2", "0"].iter().map(|s| parse_group(s)).collect::<Result<_>>()?;
    let levels = kh_sequence_z(&tuple("katsura_2_1")?, &ks)?;
    let got: Vec<String> = levels
        .iter()
        .map(|l| format!("{} {} {} {}", l.coker_a, l.coker_b, l.ker_a, l.ker_b))
        .collect();
    r.check("ktheory/katsura_2_1 KH pieces", got == ["0 0 0 0", "0 Z 0 0", "0 Z/2 0 Z"], got.join(" | "));
    Ok(())
}

type Suite = fn(&mut Report, usize) -> Result<()>;

fn suite_fn(name: &str) -> Option<Suite> {
    Some(match name {
        "bf" => suite_bf,
        "mu" => suite_mu,
        "burghelea" => suite_burghelea,
        "hc" => suite_hc,
        "principal" => suite_principal,
        "ep-hochschild" => suite_ep_hochschild,
        "ep-homology" => suite_ep_homology,
        "pseudofree" => suite_pseudofree,
        "iv" => suite_iv,
        "kappa" => suite_kappa,
        "twisted" => suite_twisted,
        "ktheory" => suite_ktheory,
        _ => return None,
    })
}

pub fn run_suite(name: &str, echo: String, window: Option<usize>) -> Report {
    let window = window.unwrap_or(DEFAULT_WINDOW).max(1);
    let mut r = Report::new(echo, format!("suite {name}"));
    let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![name] };
    for s in names {
        let Some(f) = suite_fn(s) else {
            r.fail(format!("unknown suite {s:?}; expected one of {} or all", SUITES.join(", ")));
            return r;
        };
        if let Err(e) = f(&mut r, window) {
            r.fail(format!("suite {s} stopped: {e}"));
        }
    }
    if name == "iv" || name == "all" {
        r.note("S_3 on three parallel edges has dim I_v = 1, spanned by the sign-weighted sum of all elements");
    }
    r.assume(crate::commands::ELL);
    r
}
