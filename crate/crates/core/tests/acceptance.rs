//! Acceptance suite. Prints one `PASS`/`FAIL` line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};

use hurwitz_core::bell::invert_closed_form;
use hurwitz_core::br::{autoconvolution, is_in_br};
use hurwitz_core::transforms::{alternating_sign, is_even, is_odd, series_exp, series_log, stirling_transform, ZigzagTable};
use hurwitz_core::verify::{self, gen, Rng8};
use hurwitz_core::{HurwitzSeries, Ring};

type Outcome = Result<(), String>;

fn rng(criterion: u64, trial: usize) -> Rng8 {
    Rng8::seed_from_u64(criterion * 1_000_003 + trial as u64)
}

fn trials(criterion: u64, n: usize, check: impl Fn(&mut Rng8) -> Outcome) -> Outcome {
    for t in 0..n {
        check(&mut rng(criterion, t)).map_err(|e| format!("trial {t}: {e}"))?;
    }
    Ok(())
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn worked_example() -> Outcome {
    trials(1, 100, |r| verify::check_worked_example(autoconvolution, r))
}

fn closed_form_inverse() -> Outcome {
    trials(2, 100, |r| {
        let a = gen::invertible_series(r, Ring::Rationals, 12);
        let closed = invert_closed_form(&a).map_err(err)?;
        if closed != a.invert().map_err(err)? {
            return Err(format!("closed form differs for {a}"));
        }
        if !a.convolve(&closed).map_err(err)?.is_identity() {
            return Err(format!("a * a^-1 != 1 for {a}"));
        }
        Ok(())
    })
}

fn automorphisms() -> Outcome {
    trials(3, 100, |r| {
        let a = gen::series(r, Ring::Integers, 10);
        let b = gen::series(r, Ring::Integers, 10);
        let ab = a.convolve(&b).map_err(err)?;
        let fs: [(&str, fn(&HurwitzSeries) -> HurwitzSeries); 2] =
            [("E", alternating_sign), ("S", stirling_transform)];
        for (name, f) in fs {
            if f(&ab) != f(&a).convolve(&f(&b)).map_err(err)? {
                return Err(format!("{name} not multiplicative on {a}, {b}"));
            }
        }
        Ok(())
    })
}

fn golden_sequences() -> Outcome {
    verify::check_golden_sequences()
}

fn closure() -> Outcome {
    trials(5, 50, |r| {
        let a = gen::br_element(r, Ring::Integers, 14);
        verify::check_closure(&a, &[-2, -1, 1, 2])
    })?;
    let beta = ZigzagTable::new(10).series(Ring::Integers).map_err(err)?;
    if is_in_br(&stirling_transform(&beta)) {
        return Err("S(beta) is in B_Z".into());
    }
    Ok(())
}

fn round_trips() -> Outcome {
    trials(6, 50, |r| verify::check_round_trip(r, 12))
}

fn even_term_oracles() -> Outcome {
    trials(7, 25, |r| {
        let odds = gen::values(r, Ring::Rationals, 5);
        verify::check_even_term_oracles(&odds, 5)
    })
}

fn dynamics() -> Outcome {
    trials(8, 50, |r| verify::check_dynamics(&gen::unit_series(r, Ring::Integers, 20)))?;
    trials(80, 100, |r| {
        let a = gen::series(r, Ring::Integers, 20);
        let share = r.random_range(0..=20);
        let b = gen::series(r, Ring::Integers, 20)
            .map(|i, v| if i < share { a.coeff(i).clone() } else { v.clone() });
        verify::check_contraction(&a, &b)
    })
}

fn characterization() -> Outcome {
    trials(9, 50, |r| {
        let h = gen::series(r, Ring::Rationals, 14).odd_part();
        let e = series_exp(&h).map_err(err)?;
        if is_in_br(&e) {
            Ok(())
        } else {
            Err(format!("exp({h}) = {e} is not in B_Q"))
        }
    })?;
    trials(90, 50, |r| {
        let a = gen::br_element(r, Ring::Rationals, 14);
        let log = series_log(&a).map_err(err)?;
        if !is_odd(&log) {
            return Err(format!("log({a}) is not odd"));
        }
        let g = a.derivative().and_then(|d| d.convolve(&a.invert()?)).map_err(err)?;
        if !is_even(&g) {
            return Err(format!("log-derivative of {a} is not even"));
        }
        Ok(())
    })
}

fn ultrametric_and_prefixes() -> Outcome {
    // Coefficients in {-1, 0, 1} so that random triples share prefixes.
    trials(10, 200, |r| {
        let mut small = || HurwitzSeries::from_fn(Ring::Integers, 6, |_| Ring::Integers.from_i64(r.random_range(-1..=1)));
        let (a, b, c) = (small().map_err(err)?, small().map_err(err)?, small().map_err(err)?);
        verify::check_strong_triangle(&a, &b, &c)
    })?;
    for m in 2..=12 {
        trials(100 + m as u64, 5, |r| {
            let a = gen::unit_series(r, Ring::Rationals, m + 4);
            verify::check_prefix_stability(&a, m)
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("worked example reproduction", worked_example),
        ("closed-form inverse", closed_form_inverse),
        ("automorphism laws", automorphisms),
        ("golden sequences", golden_sequences),
        ("B_R closure", closure),
        ("reconstruction round trips", round_trips),
        ("even-term oracle equivalence", even_term_oracles),
        ("contraction dynamics", dynamics),
        ("B_R characterization", characterization),
        ("ultrametric laws and prefix stability", ultrametric_and_prefixes),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {} {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
