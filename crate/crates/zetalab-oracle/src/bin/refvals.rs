//! Prints reference values computed by the slow evaluators.
//!
//! Usage: refvals [task...]
//! Tasks: basics j100 j200 strip fourth ladder hli ingham det
//! With no arguments, runs the cheap tasks (basics j100 j200).

use std::env;

use zetalab_oracle::{moment_brute, HighPrecZeta};

const EULER_C: f64 = 0.5772156649015329;

fn f_map(u: f64) -> f64 {
    u * u.ln() + (EULER_C - (2.0 * std::f64::consts::PI).ln()) * u
}

/// Cumulative second moment on the critical line from 0, with forward search
/// for J(v) = target. Returns (v, J_at_base).
fn solve_j_forward(base: f64, target: f64, step: f64) -> (f64, f64) {
    let j_base = moment_brute(0.5, 2, 0.0, base, step);
    let mut lo = base;
    let mut acc = j_base;
    let chunk = 8.0;
    loop {
        let next = moment_brute(0.5, 2, lo, lo + chunk, step);
        if acc + next >= target {
            // bisect inside [lo, lo+chunk]
            let mut a = lo;
            let mut b = lo + chunk;
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                let jm = acc + moment_brute(0.5, 2, lo, m, step);
                if jm < target {
                    a = m;
                } else {
                    b = m;
                }
            }
            return (0.5 * (a + b), j_base);
        }
        acc += next;
        lo += chunk;
    }
}

fn main() {
    let args: Vec<String> = env::args().skip(1).collect();
    let tasks: Vec<&str> = if args.is_empty() {
        vec!["basics", "j100", "j200"]
    } else {
        args.iter().map(|s| s.as_str()).collect()
    };

    for task in tasks {
        match task {
            "basics" => {
                let mut hp = HighPrecZeta::new(60);
                println!("zeta(1/2)      = {:.17e}", hp.zeta_real_f64(0.5));
                println!("zeta(3/2)      = {:.17e}", hp.zeta_real_f64(1.5));
                println!("zeta(2)        = {:.17e}", hp.zeta_real_f64(2.0));
                println!("zeta(3)        = {:.17e}", hp.zeta_real_f64(3.0));
                println!("zeta(4)        = {:.17e}", hp.zeta_real_f64(4.0));
                let a = hp.abs_sq_f64(0.5, 14.134725141734694);
                println!("|zeta|^2 @zero = {:.3e}", a);
            }
            "j100" => {
                let v = moment_brute(0.5, 2, 0.0, 100.0, 0.002);
                println!("J(0,100)  = {:.12e}", v);
            }
            "j200" => {
                let v = moment_brute(0.5, 2, 0.0, 200.0, 0.002);
                println!("J(0,200)  = {:.12e}", v);
            }
            "strip" => {
                for &sigma in &[0.75, 1.0, 2.0] {
                    for &t in &[1000.0, 2000.0, 8000.0_f64] {
                        let v = moment_brute(sigma, 2, 1.0, t, 0.01);
                        let mut hp = HighPrecZeta::new(60);
                        let z2s = hp.zeta_real_f64(2.0 * sigma);
                        println!(
                            "J1({t},{sigma}) = {:.10e}  ratio_to_zeta(2s)T = {:.6}",
                            v,
                            v / (z2s * t)
                        );
                    }
                }
            }
            "fourth" => {
                for &t in &[2000.0_f64, 5392.3] {
                    let v = moment_brute(0.5, 4, 1.0, t, 0.004);
                    let lead = t * t.ln().powi(4) / (2.0 * std::f64::consts::PI.powi(2));
                    println!("M4(1,{t}) = {:.10e}  ratio_to_lead = {:.6}", v, v / lead);
                }
            }
            "ladder" => {
                for &t in &[1000.0_f64, 10000.0] {
                    let target = f_map(t);
                    let (v, j_base) = solve_j_forward(t, target, 0.005);
                    let refgap = (1.0 - EULER_C) * t / t.ln();
                    println!(
                        "T={t}: J(T)={:.10e}  T1={:.8}  gap={:.6}  gap/ref={:.6}",
                        j_base,
                        v,
                        v - t,
                        (v - t) / refgap
                    );
                }
            }
            "hli" => {
                // (1/tau) * J~(T) * strip(T,T1,sigma) / line(T,T1), T = x tau / zeta(2 sigma)
                let mut hp = HighPrecZeta::new(60);
                let z2 = hp.zeta_real_f64(2.0);
                for &(x, tau) in &[(1.0, 500.0), (1.0, 5000.0), (2.0, 5000.0_f64)] {
                    let t = x * tau / z2;
                    let (t1, _) = solve_j_forward(t, f_map(t), 0.005);
                    let jt = moment_brute(0.5, 2, 1.0, t, 0.005);
                    let strip = moment_brute(1.0, 2, t, t1, 0.005);
                    let line = moment_brute(0.5, 2, t, t1, 0.005);
                    let raw = jt * strip / (tau * line);
                    println!(
                        "hli x={x} tau={tau}: T={t:.4} T1={t1:.4} raw={raw:.6} raw/x={:.6}",
                        raw / x
                    );
                }
            }
            "ingham" => {
                let mut hp = HighPrecZeta::new(60);
                let z2 = hp.zeta_real_f64(2.0);
                let coeff = 2.0 * std::f64::consts::PI.powi(2) / z2.powi(4);
                for &tau in &[500.0_f64, 1000.0, 2000.0] {
                    let t = coeff * tau;
                    let (t1, _) = solve_j_forward(t, f_map(t), 0.005);
                    let m4 = moment_brute(0.5, 4, 1.0, t, 0.004);
                    let strip = moment_brute(1.0, 2, t, t1, 0.005);
                    let line = moment_brute(0.5, 2, t, t1, 0.005);
                    let raw = m4 * (strip / line).powi(4) / tau;
                    println!("ingham tau={tau}: T={t:.4} T1={t1:.4} raw={raw:.6}");
                }
            }
            "det" => {
                let mut hp = HighPrecZeta::new(60);
                let z2 = hp.zeta_real_f64(2.0);
                let hli_lin = 1.0 + (2.0 * std::f64::consts::PI).ln() - 2.0 * EULER_C;
                for &t in &[3000.0_f64, 10000.0] {
                    let (t1, _) = solve_j_forward(t, f_map(t), 0.005);
                    let a = moment_brute(0.5, 2, t, t1, 0.005);
                    let b = moment_brute(1.0, 2, t, t1, 0.005);
                    let c = moment_brute(0.5, 2, 1.0, t, 0.005);
                    let d = moment_brute(1.0, 2, 1.0, t, 0.01);
                    let lhs = a * d - b * c;
                    let rhs = hli_lin / z2 * d * b;
                    println!("det T={t}: lhs={lhs:.6e} rhs={rhs:.6e} lhs/rhs={:.6}", lhs / rhs);
                }
            }
            "theorem1" => {
                let mut hp = HighPrecZeta::new(60);
                for &t in &[1000.0_f64, 10000.0] {
                    let (t1, _) = solve_j_forward(t, f_map(t), 0.005);
                    let line = moment_brute(0.5, 2, t, t1, 0.005);
                    for &sigma in &[0.75, 1.0] {
                        let z2s = hp.zeta_real_f64(2.0 * sigma);
                        let strip = moment_brute(sigma, 2, t, t1, 0.005);
                        let ratio = line / strip;
                        let reference = t.ln() / z2s;
                        println!(
                            "theorem1 T={t} sigma={sigma}: ratio={ratio:.6} ref={reference:.6} diff={:.4}",
                            ratio - reference
                        );
                    }
                }
            }
            other => eprintln!("unknown task: {other}"),
        }
    }
}
