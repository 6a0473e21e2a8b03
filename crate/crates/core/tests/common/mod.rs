//! Random valid presentations with at most four vertices and weights at most 3.

#![allow(dead_code)]

use std::collections::BTreeMap;

use biserial::algebra::AlgebraTable;
use biserial::field::{FieldSpec, Scalar};
use biserial::presentation::{validate_presentation, Presentation, PresentationData};
use biserial::quiver::{admissible_arrows, derive_orbits, validate_biserial_quiver, Quiver};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_quiver(rng: &mut ChaCha8Rng, vertices: usize) -> Quiver {
    loop {
        let mut heads: Vec<usize> = (0..vertices).flat_map(|v| [v, v]).collect();
        heads.shuffle(rng);
        let arrows: Vec<(String, String, String)> =
            (0..2 * vertices).map(|k| (format!("a{k}"), (k / 2).to_string(), heads[k].to_string())).collect();
        let ids: Vec<String> = (0..vertices).map(|v| v.to_string()).collect();
        let q = Quiver::new(ids, arrows).expect("well-formed");
        if q.is_connected() {
            return q;
        }
    }
}

fn small_scalar(rng: &mut ChaCha8Rng, field: FieldSpec, nonzero: bool) -> Scalar {
    loop {
        let num = rng.gen_range(-3i64..=3);
        let den = rng.gen_range(1i64..=2);
        if let Ok(s) = Scalar::parse(&format!("{num}/{den}"), field) {
            if !(nonzero && s.is_zero()) {
                return s;
            }
        }
    }
}

/// Draws a presentation, repairing `d` so the admissibility conditions hold.
pub fn random_presentation(rng: &mut ChaCha8Rng, field: FieldSpec) -> Presentation {
    let vertices = rng.gen_range(1..=4);
    let quiver = random_quiver(rng, vertices);
    let mut f = BTreeMap::new();
    for v in quiver.vertices() {
        let ins = quiver.in_arrows(v);
        let mut outs = quiver.out_arrows(v);
        if rng.gen_bool(0.5) {
            outs.reverse();
        }
        for (a, b) in ins.into_iter().zip(outs) {
            f.insert(quiver.arrow_id(a).to_string(), quiver.arrow_id(b).to_string());
        }
    }
    let bq = validate_biserial_quiver(quiver, &f).expect("2-regular by construction");
    let orbits = derive_orbits(&bq);
    let omega = admissible_arrows(&bq, &orbits);
    let q = bq.quiver().clone();
    let id = |a| q.arrow_id(a).to_string();

    let weights: Vec<u32> = orbits.orbit_ids().map(|_| rng.gen_range(1..=3)).collect();
    let weight_of = |a| weights[orbits.orbit_of(a).index()];
    let m = orbits.orbit_ids().map(|o| (id(orbits.representative(o)), weights[o.index()])).collect();
    let mut r = BTreeMap::new();
    let mut d = BTreeMap::new();
    for &a in &omega {
        r.insert(id(a), rng.gen_range(1..=weight_of(a)));
        let value = if rng.gen_bool(0.5) { Scalar::zero(field) } else { small_scalar(rng, field, true) };
        d.insert(id(a), value);
    }
    for a in q.arrows() {
        if weight_of(a) as usize * orbits.n(a) == 1 {
            if let Some(v) = d.get_mut(&id(bq.f_inv(a))) {
                *v = Scalar::zero(field);
            }
        }
    }
    let omega: Vec<_> = omega.into_iter().collect();
    for (i, &a) in omega.iter().enumerate() {
        for &b in &omega[i + 1..] {
            let (ga, gb) = (orbits.g(a), orbits.g(b));
            let parallel = q.source(ga) == q.source(gb) && q.target(ga) == q.target(gb);
            if parallel && (&d[&id(a)] * &d[&id(b)]).is_one() {
                d.insert(id(b), Scalar::zero(field));
            }
        }
    }
    let c = q.arrows().map(|a| (id(a), small_scalar(rng, field, true))).collect();
    validate_presentation(PresentationData { bq, field, m, r, c, d }).expect("repaired presentation is valid")
}

/// The fixed 200-presentation corpus over the rationals.
pub fn random_corpus() -> Vec<Presentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_b15e);
    (0..200).map(|_| random_presentation(&mut rng, FieldSpec::Rationals)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(xy)z` for basis indices, as an optional monomial.
fn triple(t: &AlgebraTable, x: usize, y: usize, z: usize, left_first: bool) -> Option<(Scalar, usize)> {
    if left_first {
        let (s, k) = t.product_basis(x, y)?.clone();
        let (u, i) = t.product_basis(k, z)?;
        Some((&s * u, *i))
    } else {
        let (s, k) = t.product_basis(y, z)?.clone();
        let (u, i) = t.product_basis(x, k)?;
        Some((&s * u, *i))
    }
}

pub fn associates(t: &AlgebraTable, x: usize, y: usize, z: usize) -> bool {
    triple(t, x, y, z, true) == triple(t, x, y, z, false)
}

/// Draws `samples` composable basis triples and counts the non-associative ones.
pub fn associativity_failures(t: &AlgebraTable, samples: usize, rng: &mut ChaCha8Rng) -> usize {
    let q = t.quiver();
    let starting_at: Vec<Vec<usize>> =
        q.vertices().map(|v| (0..t.dimension()).filter(|&i| t.source(i) == v).collect()).collect();
    let mut failures = 0;
    for _ in 0..samples {
        let x = rng.gen_range(0..t.dimension());
        let y = *starting_at[t.target(x).index()].choose(rng).expect("every vertex has e_i");
        let z = *starting_at[t.target(y).index()].choose(rng).expect("every vertex has e_i");
        if !associates(t, x, y, z) {
            failures += 1;
        }
    }
    failures
}

/// Every nonzero `d_α` multiplies a socle-length path.
pub fn socle_level(p: &Presentation) -> bool {
    p.sub_socle_deformations().is_empty()
}
