use asymptotic_hecke::asymptotic::{AFunction, JElement, JRing};
use asymptotic_hecke::hecke::HeckeAlgebra;
use asymptotic_hecke::laurent::LaurentInt;
use asymptotic_hecke::weyl::GroupElement;

use crate::report::{Cell, Checks, Report};
use crate::{CliError, CliResult, Ctx};

fn descents(d: &[u8]) -> String {
    d.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
}

/// `P` as a polynomial in `q = v^2`, highest power first.
fn q_poly(p: &LaurentInt) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (e, c)) in p.terms().iter().rev().enumerate() {
        let k = e / 2;
        let neg = c.signum() < 0.into();
        let abs = c.clone() * c.signum();
        if i > 0 {
            s += if neg { " - " } else { " + " };
        } else if neg {
            s += "-";
        }
        let coeff = if abs == 1.into() && k != 0 {
            String::new()
        } else {
            abs.to_string()
        };
        s += &match k {
            0 => coeff,
            1 => format!("{coeff}q"),
            _ => format!("{coeff}q^{k}"),
        };
    }
    s
}

/// Longest distinguished involution of affine A1/A2, `2ℓ(w0) - 1`.
fn dinv_length(ctx: &Ctx) -> usize {
    2 * ctx.group.finite_longest_length() - 1
}

fn ring(ctx: &Ctx, working: usize) -> CliResult<JRing> {
    let r = JRing::scan_radius_for(&ctx.group, working);
    Ok(JRing::from_table(ctx.table(2 * r)?, working)?)
}

pub fn group(ctx: &Ctx) -> CliResult<Report> {
    let radius = ctx.radius_or(3);
    let g = &ctx.group;
    let mut rep = Report::new("group", true, Some(radius), None)
        .field("type", Cell::text(g.label()))
        .columns(&["w", "length", "left_descents", "right_descents", "involution"]);
    let mut count = 0u64;
    for w in g.enumerate_ball(radius) {
        rep.row(vec![
            Cell::elem(&w),
            Cell::num(w.length() as u64),
            Cell::text(descents(&g.left_descents(&w)?)),
            Cell::text(descents(&g.right_descents(&w)?)),
            Cell::bool(g.is_involution(&w)?),
        ]);
        count += 1;
    }
    Ok(rep.field("size", Cell::num(count)))
}

pub fn kl(ctx: &Ctx, y: &str, w: &str) -> CliResult<Report> {
    let (y, w) = (ctx.elem("y", y)?, ctx.elem("w", w)?);
    let radius = ctx.radius_or(w.length().max(y.length()));
    let alg = HeckeAlgebra::from_table(ctx.table(radius)?);
    let p = alg.kl_polynomial(&y, &w)?;
    let mu = alg.table().mu(&y, &w)?;
    // C'_w is characterized by bar invariance and unitriangularity with
    // off-diagonal coefficients in v^-1 Z[v^-1].
    let c = alg.c_basis_element(&w, false)?;
    let characterized = alg.bar(&c)? == c
        && c.terms().iter().all(|(u, coeff)| {
            if *u == w {
                coeff.is_one()
            } else {
                coeff.highest_exponent().is_some_and(|e| e <= -1)
            }
        });
    let coeffs: Vec<String> = (0..=p.q_degree().unwrap_or(0) as i32)
        .map(|k| p.coeff(2 * k).to_string())
        .collect();
    Ok(Report::new("kl", characterized, Some(radius), ctx.basis())
        .field("y", Cell::elem(&y))
        .field("w", Cell::elem(&w))
        .field("P", Cell::text(q_poly(&p)))
        .field("P_coeffs", Cell::ser(&Joined(coeffs)))
        .field("mu", Cell::num(mu)))
}

/// A list shown as `[a, b]` in text and as a JSON array.
struct Joined(Vec<String>);

impl serde::Serialize for Joined {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl std::fmt::Display for Joined {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.0.join(", "))
    }
}

fn product_basis(ctx: &Ctx) -> &'static str {
    if ctx.signed() {
        "C"
    } else {
        "C'"
    }
}

pub fn hmul(ctx: &Ctx, x: &str, y: &str) -> CliResult<Report> {
    let (x, y) = (ctx.elem("x", x)?, ctx.elem("y", y)?);
    let radius = ctx.radius_or(x.length() + y.length());
    let alg = HeckeAlgebra::from_table(ctx.table(radius)?);
    let h = alg.h_constants(&x, &y, ctx.signed())?;
    let mut rep = Report::new("hmul", true, Some(radius), ctx.basis())
        .field("x", Cell::elem(&x))
        .field("y", Cell::elem(&y))
        .field("product_basis", Cell::text(product_basis(ctx)))
        .columns(&["z", "h"]);
    for (z, c) in &h {
        rep.row(vec![Cell::elem(z), Cell::ser(c)]);
    }
    Ok(rep)
}

pub fn hconst(ctx: &Ctx, x: &str, y: &str, z: &str) -> CliResult<Report> {
    let (x, y, z) = (ctx.elem("x", x)?, ctx.elem("y", y)?, ctx.elem("z", z)?);
    let radius = ctx.radius_or(x.length() + y.length());
    let alg = HeckeAlgebra::from_table(ctx.table(radius)?);
    let h = alg
        .h_constants(&x, &y, ctx.signed())?
        .remove(&z)
        .unwrap_or_else(LaurentInt::zero);
    Ok(Report::new("hconst", true, Some(radius), ctx.basis())
        .field("x", Cell::elem(&x))
        .field("y", Cell::elem(&y))
        .field("z", Cell::elem(&z))
        .field("h", Cell::ser(&h)))
}

pub fn afn(ctx: &Ctx, z: Option<&str>, scan: Option<usize>) -> CliResult<Report> {
    let g = &ctx.group;
    let zs: Vec<GroupElement> = match z {
        Some(z) => vec![ctx.elem("z", z)?],
        None => g.enumerate_ball(ctx.radius_or(4)),
    };
    let longest = zs.iter().map(|z| z.length()).max().unwrap_or(0);
    let bound = JRing::scan_radius_for(g, longest);
    let scan = scan.unwrap_or(bound);
    let alg = HeckeAlgebra::from_table(ctx.table(2 * scan)?);
    let afn = AFunction::scan(&alg, scan)?;
    let values = zs.iter().map(|z| afn.value(&alg, z)).collect::<Result<Vec<_>, _>>()?;
    let certified = values.iter().all(|v| v.certified);
    if !certified && !ctx.cfg.allow_uncertified {
        return Err(CliError::Refusal(format!(
            "a-values up to length {longest} need scan radius {bound}, got {scan}; pass --allow-uncertified to print them anyway"
        )));
    }
    let mut rep = Report::new("afn", certified, Some(scan), ctx.basis())
        .field("scan_radius", Cell::num(scan as u64))
        .field("certification_bound", Cell::num(bound as u64))
        .columns(&["z", "a", "certified"]);
    for v in &values {
        rep.row(vec![Cell::elem(&v.z), Cell::num(v.value), Cell::bool(v.certified)]);
    }
    Ok(rep)
}

pub fn gamma(ctx: &Ctx, x: &str, y: &str, z: Option<&str>) -> CliResult<Report> {
    let (x, y) = (ctx.elem("x", x)?, ctx.elem("y", y)?);
    let z = z.map(|z| ctx.elem("z", z)).transpose()?;
    let needed = (x.length() + y.length()).max(z.as_ref().map_or(0, |z| z.length()));
    let working = ctx.radius_or(needed);
    let r = ring(ctx, working)?;
    let signed = ctx.signed();
    let rep = Report::new("gamma", true, Some(working), ctx.basis())
        .field("x", Cell::elem(&x))
        .field("y", Cell::elem(&y));
    if let Some(z) = z {
        let c = r.gamma(&x, &y, &z, signed)?;
        let a = r.a_value(&z)?.value;
        return Ok(rep
            .field("z", Cell::elem(&z))
            .field("gamma", Cell::text(&c))
            .field("a_z", Cell::num(a)));
    }
    let row = r.gamma_row(&x, &y, signed)?;
    let mut rep = rep.columns(&["z", "gamma", "a_z"]);
    for (z, c) in row.iter() {
        rep.row(vec![Cell::elem(z), Cell::text(c), Cell::num(r.a_value(z)?.value)]);
    }
    Ok(rep)
}

pub fn jmul(ctx: &Ctx, x: &str, y: &str) -> CliResult<Report> {
    let (x, y) = (ctx.elem("x", x)?, ctx.elem("y", y)?);
    let working = ctx.radius_or(x.length() + y.length());
    let r = ring(ctx, working)?;
    let p = r.j_multiply(
        &JElement::basis(x.clone(), working),
        &JElement::basis(y.clone(), working),
        ctx.signed(),
    )?;
    let mut rep = Report::new("jmul", true, Some(working), ctx.basis())
        .field("x", Cell::elem(&x))
        .field("y", Cell::elem(&y))
        .columns(&["z", "coefficient"]);
    for (z, c) in &p.terms {
        rep.row(vec![Cell::elem(z), Cell::text(c)]);
    }
    Ok(rep)
}

pub fn dinv(ctx: &Ctx) -> CliResult<Report> {
    let working = ctx.radius_or(dinv_length(ctx));
    let r = ring(ctx, working)?;
    let mut rep = Report::new("dinv", true, Some(working), ctx.basis()).columns(&["d", "length", "a"]);
    for d in r.distinguished_involutions(working)? {
        rep.row(vec![
            Cell::elem(&d),
            Cell::num(d.length() as u64),
            Cell::num(r.a_value(&d)?.value),
        ]);
    }
    Ok(rep)
}

pub fn phi(ctx: &Ctx, x: &str) -> CliResult<Report> {
    let x = ctx.elem("x", x)?;
    let working = ctx.radius_or(x.length() + dinv_length(ctx));
    let r = ring(ctx, working)?;
    let signed = ctx.signed();
    let image = r.phi(&x, signed)?;
    let rep = Report::new("phi", true, Some(working), ctx.basis()).field("x", Cell::elem(&x));
    if let Some(q) = &ctx.cfg.q {
        let spec = r.phi_specialized(&x, q, signed)?;
        let mut rep = rep.field("q", Cell::text(q)).columns(&["z", "coefficient", "value"]);
        for (z, c) in &image.terms {
            rep.row(vec![Cell::elem(z), Cell::ser(c), Cell::text(&spec[z])]);
        }
        return Ok(rep);
    }
    let mut rep = rep.columns(&["z", "coefficient"]);
    for (z, c) in &image.terms {
        rep.row(vec![Cell::elem(z), Cell::ser(c)]);
    }
    Ok(rep)
}

pub fn phi_check(ctx: &Ctx, bound: usize, rank_ball: usize) -> CliResult<Report> {
    let dl = dinv_length(ctx);
    let need_rank = if ctx.cfg.q.is_some() { rank_ball + dl } else { 0 };
    let working = ctx.radius_or((bound + 2 * dl).max(need_rank));
    let r = ring(ctx, working)?;
    let signed = ctx.signed();
    let ball = ctx.group.enumerate_ball(bound);
    let mut checks = Checks::default();
    for x in &ball {
        for y in ball.iter().filter(|y| x.length() + y.length() <= bound) {
            let defect = r.phi_product_defect(x, y, signed)?;
            checks.record(defect.terms.is_empty(), || {
                let support: Vec<String> = defect.terms.keys().take(5).map(|z| z.to_compact()).collect();
                format!(
                    "phi(C_{x}) phi(C_{y}) != phi(C_{x} C_{y}); differs at {}",
                    support.join(" ")
                )
            });
        }
    }
    let mut rep = Report::new("phi-check", true, Some(working), ctx.basis())
        .field("bound", Cell::num(bound as u64))
        .field("pairs", Cell::num(checks.pass + checks.fail));
    if let Some(q) = &ctx.cfg.q {
        let xs = ctx.group.enumerate_ball(rank_ball);
        let rank = r.phi_rank(&xs, q, signed)?;
        checks.record(rank.full_rank(), || {
            format!(
                "rank {} < {} on the ball of radius {rank_ball} at q={q}",
                rank.rank, rank.vectors
            )
        });
        rep = rep
            .field("q", Cell::text(q))
            .field("rank_ball", Cell::num(rank_ball as u64))
            .field("rank", Cell::num(rank.rank as u64))
            .field("vectors", Cell::num(rank.vectors as u64))
            .field("field", Cell::text(&rank.field));
    }
    rep.checks = Some(checks);
    Ok(rep)
}
