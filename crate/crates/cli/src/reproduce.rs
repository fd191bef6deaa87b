use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::Instant;

use cadproj::elim::{canonical, groebner_lex, macaulay_resultant, sylvester_resultant};
use cadproj::poly::{factor_univariate, squarefree_part};
use cadproj::project::{bezout_filter, split_genuine_spurious, Tag};
use cadproj::rewrite::{clear_denominators, eval_matrix, parse_formula, Dialect, Formula, Mode};
use cadproj::{Polynomial, VarOrder};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::commands::Outcome;
use crate::error::CliError;

pub const SECTIONS: &[(&str, bool, &str)] = &[
    ("eq2-4", false, "iterated resultants of the small triple and their splits"),
    ("sec3.2", false, "the small triple under the reversed order"),
    ("sec4.4-light", false, "four-variable example: first resultant and the pivot"),
    ("sec4.4-heavy", true, "four-variable example: second-level resultants (hours)"),
    ("sec4.7", false, "degree-5 triple: factor split and Bézout filter (minutes)"),
    ("sec6.5", false, "denominator clearing of 1/x^2 >= 0"),
];

struct Report {
    section: String,
    text: String,
    failed: bool,
}

impl Report {
    fn check<F: FnOnce() -> Result<(), String>>(&mut self, name: &str, f: F) {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(()) => writeln!(self.text, "PASS {}/{name} ({secs:.2}s)", self.section),
            Err(e) => {
                self.failed = true;
                writeln!(self.text, "FAIL {}/{name} ({secs:.2}s): {e}", self.section)
            }
        }
        .unwrap();
    }
}

fn poly(s: &str, o: &VarOrder) -> Polynomial {
    Polynomial::parse(s, o).expect("stored polynomial parses")
}

fn same(got: &Polynomial, want: &Polynomial) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got}, expected {want}"))
    }
}

fn shape(p: &Polynomial, terms: usize, degree: u32) -> Result<(), String> {
    if p.nterms() == terms && p.total_degree() == degree {
        Ok(())
    } else {
        Err(format!("got {} terms D={}, expected {terms} terms D={degree}", p.nterms(), p.total_degree()))
    }
}

fn res(f: &Polynomial, g: &Polynomial, v: &str) -> Result<Polynomial, String> {
    sylvester_resultant(f, g, v).map_err(|e| e.to_string())
}

fn small_triple(o: &VarOrder) -> [Polynomial; 3] {
    [
        poly("y^2 + z^2 + x + z - 1", o),
        poly("-x^2 + y^2 + z^2 - 1", o),
        poly("x^2 + y + z", o),
    ]
}

fn eq2_4(r: &mut Report) {
    let o = VarOrder::new(["z", "y", "x"]).unwrap();
    let [f, g, h] = small_triple(&o);
    let iterated = |a: (&Polynomial, &Polynomial), b: (&Polynomial, &Polynomial)| -> Result<Polynomial, String> {
        res(&res(a.0, a.1, "z")?, &res(b.0, b.1, "z")?, "y")
    };
    let genuine = poly("x^4 + 2*x^3 + x^2 - 1", &o);
    let cases = [
        (
            "eq2",
            (&f, &g),
            (&f, &h),
            "5*x^8 + 16*x^7 + 14*x^6 - 2*x^5 - 12*x^4 - 8*x^3 + 3*x^2 + 2*x",
            "x*(5*x^3 + 6*x^2 - 3*x - 2)",
        ),
        (
            "eq3",
            (&f, &g),
            (&g, &h),
            "5*x^8 + 16*x^7 + 18*x^6 + 8*x^5 - 5*x^4 - 8*x^3 - 2*x^2 + 1",
            "5*x^4 + 6*x^3 + x^2 - 1",
        ),
        ("eq4", (&f, &h), (&g, &h), "2*x^4 + 4*x^3 + 2*x^2 - 2", "1"),
    ];
    let mut results = Vec::new();
    for (name, a, b, want, _) in &cases {
        let mut got = None;
        r.check(&format!("{name}-iterated"), || {
            let it = iterated(*a, *b)?;
            let it = if it.leading_sign() < 0 { -it } else { it };
            got = Some(it.clone());
            same(&it, &poly(want, &o))
        });
        results.push(got);
    }
    let mut multires = None;
    r.check("multires", || {
        let m = macaulay_resultant(&[f.clone(), g.clone(), h.clone()], &["y", "z"]).map_err(|e| e.to_string())?;
        multires = Some(m.clone());
        same(&m, &genuine)
    });
    for ((name, _, _, _, spurious), it) in cases.iter().zip(&results) {
        r.check(&format!("{name}-split"), || {
            let it = it.as_ref().ok_or("iterated resultant unavailable")?;
            let m = multires.as_ref().ok_or("multivariate resultant unavailable")?;
            let s = split_genuine_spurious(it, m).map_err(|e| e.to_string())?;
            same(&s.genuine, &genuine)?;
            same(&s.spurious, &poly(spurious, &o))
        });
    }
    r.check("groebner", || {
        let b = groebner_lex(&[f.clone(), g.clone(), h.clone()], &o).map_err(|e| e.to_string())?;
        let want: Vec<Polynomial> = ["x^4 + 2*x^3 + x^2 - 1", "y - x", "x^2 + x + z"].iter().map(|s| poly(s, &o)).collect();
        if b == want {
            Ok(())
        } else {
            Err(format!("got {:?}", b.iter().map(|p| p.to_string()).collect::<Vec<_>>()))
        }
    });
}

fn sec3_2(r: &mut Report) {
    let o = VarOrder::new(["x", "y", "z"]).unwrap();
    let [f, g, h] = small_triple(&o);
    let cases = [
        ("fg-fh", (&f, &g), (&f, &h), 2),
        ("fg-gh", (&f, &g), (&g, &h), 4),
        ("hg-fh", (&h, &g), (&f, &h), 4),
    ];
    for (name, a, b, e) in cases {
        r.check(name, || {
            let it = res(&res(a.0, a.1, "x")?, &res(b.0, b.1, "x")?, "y")?;
            same(&canonical(&it), &poly("z^2 - 1", &o).pow(e))
        });
    }
    r.check("groebner", || {
        let b = groebner_lex(&[f.clone(), g.clone(), h.clone()], &o).map_err(|e| e.to_string())?;
        let want: Vec<Polynomial> = ["z^2 - 1", "y^2 + y + z", "x - y"].iter().map(|s| poly(s, &o)).collect();
        if b == want {
            Ok(())
        } else {
            Err(format!("got {:?}", b.iter().map(|p| p.to_string()).collect::<Vec<_>>()))
        }
    });
}

fn four_vars() -> [Polynomial; 4] {
    let o = VarOrder::new(["w", "z", "y", "x"]).unwrap();
    [
        poly("(z - y)^3 + (x - w)^3 - (x - 1)*y + z*w", &o),
        poly("x^3 + y^3 + z*(y - 1) + w*x", &o),
        poly("w^3 + z^3 + w*y + z*x", &o),
        poly("(z + x)^3 + (w + y)^3 - z*x + w*y", &o),
    ]
}

fn pivot(fs: &[Polynomial; 4]) -> Result<Polynomial, String> {
    macaulay_resultant(&fs[..3], &["w", "z"]).map_err(|e| e.to_string())
}

fn sec4_4_light(r: &mut Report) {
    let fs = four_vars();
    r.check("g1", || shape(&res(&fs[0], &fs[1], "w")?, 40, 9));
    r.check("hhat1", || {
        let h = pivot(&fs)?;
        shape(&h, 359, 27)?;
        let x27 = h.coeff_of(&[0, 0, 0, 27]);
        let x24y3 = h.coeff_of(&[0, 0, 3, 24]);
        if x27 == BigInt::from(8) && x24y3 == BigInt::from(72) {
            Ok(())
        } else {
            Err(format!("leading coefficients {x27}, {x24y3}, expected 8, 72"))
        }
    });
}

fn sec4_4_heavy(r: &mut Report) {
    let fs = four_vars();
    let g1 = res(&fs[0], &fs[1], "w");
    let mut h2 = None;
    r.check("h1", || {
        let g2 = res(&fs[0], &fs[2], "w")?;
        shape(&res(g1.as_ref()?, &g2, "z")?, 3186, 81)
    });
    r.check("h2", || {
        let g3 = res(&fs[0], &fs[3], "w")?;
        let h = res(g1.as_ref()?, &g3, "z")?;
        h2 = Some(h.clone());
        shape(&h, 3214, 81)
    });
    r.check("res-y-hhat1-h2", || {
        let h2 = h2.as_ref().ok_or("h2 unavailable")?;
        shape(&res(&pivot(&fs)?, h2, "y")?, 1211, 1292)
    });
    r.check("multires-wzy", || {
        let m = macaulay_resultant(&fs, &["w", "z", "y"]).map_err(|e| e.to_string())?;
        shape(&m, 62, 70)
    });
}

fn sec4_7(r: &mut Report) {
    let o = VarOrder::new(["z", "y", "x"]).unwrap();
    let f = poly("-34*x^2*z^3 - 20*y^5 + 7*x^2*y^2 - 43*y^3*z + 63*x + 16*z", &o);
    let g = poly("13*x*z^4 - 27*z^4 - 21*x*y^2 + 30*y*z - 42*x - 81", &o);
    let h = poly("-65*x*z^4 + 13*z^5 + 30*x^3*z + 17*x*y^3 + 25*y*z + 78", &o);
    let mut factors: Vec<Polynomial> = Vec::new();
    r.check("factor", || {
        let it = res(&res(&f, &g, "z")?, &res(&f, &h, "z")?, "y")?;
        let sq = squarefree_part(&it).map_err(|e| e.to_string())?;
        let fz = factor_univariate(&sq).map_err(|e| e.to_string())?;
        factors = fz.factors.iter().map(|(p, _)| p.clone()).collect();
        let degs: Vec<u32> = factors.iter().map(Polynomial::total_degree).collect();
        if degs == [89, 378] && fz.complete {
            Ok(())
        } else {
            Err(format!("factor degrees {degs:?}, complete {}", fz.complete))
        }
    });
    r.check("bezout", || {
        let tags: Vec<(u32, Tag)> = bezout_filter(&factors, 5, 3)
            .iter()
            .map(|c| (c.factor.total_degree(), c.tag))
            .collect();
        if tags == [(89, Tag::Unknown), (378, Tag::Spurious)] {
            Ok(())
        } else {
            Err(format!("got {tags:?}"))
        }
    });
    r.check("multires", || {
        let m = macaulay_resultant(&[f.clone(), g.clone(), h.clone()], &["y", "z"]).map_err(|e| e.to_string())?;
        let small = factors.first().ok_or("factors unavailable")?;
        same(&m, &small.clone().with_positive_lead())
    });
}

/// Truth of the matrix at `x = k/10`, `k = -50..=50`.
fn samples(f: &Formula) -> Vec<Option<bool>> {
    (-50..=50)
        .map(|k| {
            let env = HashMap::from([("x".to_string(), BigRational::new(k.into(), 10.into()))]);
            eval_matrix(&f.matrix, &env)
        })
        .collect()
}

fn sec6_5(r: &mut Report) {
    let forall = parse_formula("(forall ((x Real)) (>= (/ 1 (^ x 2)) 0))").unwrap();
    let exists = parse_formula("(exists ((x Real)) (< (/ 1 (^ x 2)) 0))").unwrap();
    let rewrite = |f: &Formula, m: Mode| clear_denominators(f, m).map(|(g, _)| g).map_err(|e| e.to_string());
    let emitted = |f: &Formula, d: Dialect| f.emit(d).map_err(|e| e.to_string());
    let expect = |got: String, want: &str| {
        if got == want {
            Ok(())
        } else {
            Err(format!("got {got}"))
        }
    };
    r.check("product", || {
        expect(
            emitted(&rewrite(&forall, Mode::Product)?, Dialect::Smt)?,
            "(forall ((x Real)) (or (= (* x x) 0) (>= (* x x) 0)))",
        )
    });
    r.check("sign-split", || {
        expect(
            emitted(&rewrite(&forall, Mode::SignSplit)?, Dialect::Native)?,
            "forall x. x^2 = 0 or (x^2 > 0 and 1 >= 0)",
        )
    });
    r.check("negation", || {
        expect(emitted(&rewrite(&exists, Mode::Product)?, Dialect::Native)?, "exists x. x^2 != 0 and x^2 < 0")
    });
    r.check("samples", || {
        for m in [Mode::Product, Mode::SignSplit] {
            if samples(&rewrite(&forall, m)?).iter().any(|v| *v != Some(true)) {
                return Err(format!("{m:?} rewrite of the universal statement is not true everywhere"));
            }
            if samples(&rewrite(&exists, m)?).iter().any(|v| *v != Some(false)) {
                return Err(format!("{m:?} rewrite of the negation is not false everywhere"));
            }
        }
        Ok(())
    });
}

pub fn run(section: Option<&str>, long: bool) -> Result<Outcome, CliError> {
    let Some(section) = section else {
        let mut text = String::new();
        for (id, heavy, about) in SECTIONS {
            writeln!(text, "{id:<14}{}{about}", if *heavy { "[--long] " } else { "" }).unwrap();
        }
        return Ok(Outcome {
            text,
            ..Default::default()
        });
    };
    let &(_, heavy, _) = SECTIONS
        .iter()
        .find(|(id, _, _)| *id == section)
        .ok_or_else(|| CliError::Usage(format!("unknown section `{section}`")))?;
    if heavy && !long {
        return Err(CliError::Usage(format!("section `{section}` takes hours; pass --long to run it")));
    }
    let mut r = Report {
        section: section.to_string(),
        text: String::new(),
        failed: false,
    };
    match section {
        "eq2-4" => eq2_4(&mut r),
        "sec3.2" => sec3_2(&mut r),
        "sec4.4-light" => sec4_4_light(&mut r),
        "sec4.4-heavy" => sec4_4_heavy(&mut r),
        "sec4.7" => sec4_7(&mut r),
        "sec6.5" => sec6_5(&mut r),
        _ => unreachable!("registered section"),
    }
    Ok(Outcome {
        text: r.text,
        failed: r.failed,
        ..Default::default()
    })
}
