// Scratch exploration of magnitudes and quadrature costs. Not part of the
// deliverable; removed before release.

use std::time::Instant;
use vortex_scatter::*;

fn fig3_config(theta: f64) -> ScatteringConfig {
    let photon = PhotonParams::from_nm(550.0, 1000.0).unwrap();
    ScatteringConfig::new(
        BoundState::new(1, 0, 0).unwrap(),
        BoundState::new(3, 2, 2).unwrap(),
        LGMode::new(0, 1, photon),
        LGMode::new(0, -1, photon),
        ScatteringAngle::new(theta).unwrap(),
    )
    .unwrap()
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "all".into());

    if which == "fig3zero" || which == "all" {
        // |M_v(0)| magnitude and cost at increasing precision.
        for rel in [1e-6, 1e-8, 1e-10, 1e-11] {
            let mut cfg = fig3_config(0.0);
            cfg.integrator = IntegratorConfig {
                abs_tol: 1e-22,
                rel_tol: rel,
                max_evals: 200_000_000,
                max_regions: 4_000_000,
            };
            let t = Instant::now();
            let (mv, quad) = vortex_form_factor(&cfg).unwrap();
            println!(
                "fig3 Mv(0) rel={rel:.0e}: {mv:.6e} |Mv|^2={:.4e} err={:.3e} evals={} regions={} conv={} {:?}",
                mv.norm_sqr(),
                quad.error_est,
                quad.n_evals,
                quad.n_regions,
                quad.converged,
                t.elapsed()
            );
        }
    }

    if which == "fig3m" || which == "all" {
        // |M| at small angles: cancellation depth for the twist grid.
        for theta in [0.01, 0.0316, 0.1, 0.316, 1.0, 3.0] {
            let mut cfg = fig3_config(theta);
            cfg.integrator = IntegratorConfig {
                abs_tol: 1e-12,
                rel_tol: 1e-6,
                max_evals: 200_000_000,
                max_regions: 4_000_000,
            };
            let t = Instant::now();
            let (m, quad) = plane_form_factor(&cfg).unwrap();
            println!(
                "fig3 M(theta={theta}): |M|={:.4e} |M|^2={:.4e} err={:.3e} evals={} conv={} {:?}",
                m.norm(),
                m.norm_sqr(),
                quad.error_est,
                quad.n_evals,
                quad.converged,
                t.elapsed()
            );
        }
    }

    if which == "closed" || which == "all" {
        // 1s->1s elastic vs closed form at short wavelengths.
        for lambda in [0.1, 1.0] {
            for theta in [0.5, 1.5707963, 3.0] {
                let photon = PhotonParams::from_nm(lambda, 1000.0).unwrap();
                let mut cfg = ScatteringConfig::new(
                    BoundState::new(1, 0, 0).unwrap(),
                    BoundState::new(1, 0, 0).unwrap(),
                    LGMode::new(0, 0, photon),
                    LGMode::new(0, 0, photon),
                    ScatteringAngle::new(theta).unwrap(),
                )
                .unwrap();
                cfg.integrator = IntegratorConfig {
                    abs_tol: 1e-7,
                    rel_tol: 1e-6,
                    max_evals: 100_000_000,
                    max_regions: 4_000_000,
                };
                let t = Instant::now();
                let (m, quad) = plane_form_factor(&cfg).unwrap();
                let k = photon.wavenumber_bohr();
                let q = 2.0 * k * (theta / 2.0).sin();
                let exact = (1.0 + (q / 2.0) * (q / 2.0)).powi(-2);
                println!(
                    "closed lambda={lambda} theta={theta}: |M|={:.8e} exact={:.8e} diff={:.2e} evals={} conv={} {:?}",
                    m.norm(),
                    exact,
                    (m.norm() - exact).abs(),
                    quad.n_evals,
                    quad.converged,
                    t.elapsed()
                );
            }
        }
    }

    if which == "planewave" || which == "all" {
        // Plane-wave limit: 1s->1s, l=p=0, lambda 550, theta 0.1.
        for zr in [1e4, 1e5, 1e6] {
            let photon = PhotonParams::from_nm(550.0, zr).unwrap();
            let mut cfg = ScatteringConfig::new(
                BoundState::new(1, 0, 0).unwrap(),
                BoundState::new(1, 0, 0).unwrap(),
                LGMode::new(0, 0, photon),
                LGMode::new(0, 0, photon),
                ScatteringAngle::new(0.1).unwrap(),
            )
            .unwrap();
            cfg.integrator = IntegratorConfig {
                abs_tol: 1e-12,
                rel_tol: 1e-8,
                max_evals: 100_000_000,
                max_regions: 4_000_000,
            };
            let t = Instant::now();
            let (m, mq) = plane_form_factor(&cfg).unwrap();
            let (mv, vq) = vortex_form_factor(&cfg).unwrap();
            println!(
                "planewave zr={zr:.0e}: |Mv-M|/|M| = {:.6e} (M={:.6e}, Mv={:.6e}) evalsM={} evalsMv={} conv={}/{} {:?}",
                (mv - m).norm() / m.norm(),
                m.norm(),
                mv.norm(),
                mq.n_evals,
                vq.n_evals,
                mq.converged,
                vq.converged,
                t.elapsed()
            );
        }
    }

    if which == "fig4" || which == "all" {
        // Maxima structure vs z_R at lambda = 0.1 nm, theta = 0.
        for initial_n in [1u32, 3] {
            println!("--- fig4 initial n={initial_n} ---");
            let mut zr = 0.05;
            while zr <= 2e3 {
                let photon = PhotonParams::from_nm(0.1, zr).unwrap();
                let mut cfg = ScatteringConfig::new(
                    BoundState::new(initial_n, 0, 0).unwrap(),
                    BoundState::new(3, 2, 2).unwrap(),
                    LGMode::new(0, 1, photon),
                    LGMode::new(0, -1, photon),
                    ScatteringAngle::new(0.0).unwrap(),
                )
                .unwrap();
                cfg.integrator = IntegratorConfig {
                    abs_tol: 1e-18,
                    rel_tol: 1e-7,
                    max_evals: 50_000_000,
                    max_regions: 2_000_000,
                };
                let (mv, quad) = vortex_form_factor(&cfg).unwrap();
                println!(
                    "zr={zr:10.4} nm |Mv|^2={:.6e} err={:.2e} conv={}",
                    mv.norm_sqr(),
                    quad.error_est,
                    quad.converged
                );
                zr *= 10.0_f64.powf(0.25);
            }
        }
    }

    if which == "fig5" || which == "all" {
        // vs wavelength at z_R = 10 nm.
        for initial_n in [1u32, 3] {
            println!("--- fig5 initial n={initial_n} ---");
            let mut lambda = 0.02;
            while lambda <= 2e3 {
                let photon = PhotonParams::from_nm(lambda, 10.0).unwrap();
                let mut cfg = ScatteringConfig::new(
                    BoundState::new(initial_n, 0, 0).unwrap(),
                    BoundState::new(3, 2, 2).unwrap(),
                    LGMode::new(0, 1, photon),
                    LGMode::new(0, -1, photon),
                    ScatteringAngle::new(0.0).unwrap(),
                )
                .unwrap();
                cfg.integrator = IntegratorConfig {
                    abs_tol: 1e-18,
                    rel_tol: 1e-7,
                    max_evals: 50_000_000,
                    max_regions: 2_000_000,
                };
                let (mv, quad) = vortex_form_factor(&cfg).unwrap();
                println!(
                    "lambda={lambda:10.4} nm |Mv|^2={:.6e} err={:.2e} conv={}",
                    mv.norm_sqr(),
                    quad.error_est,
                    quad.converged
                );
                lambda *= 10.0_f64.powf(0.25);
            }
        }
    }

    if which == "zrsweep" || which == "all" {
        // Forward suppression: Mv(0) vs z_R for the Fig. 3 transition.
        for zr in [1e2, 1e3, 1e4, 1e5] {
            let photon = PhotonParams::from_nm(550.0, zr).unwrap();
            let mut cfg = ScatteringConfig::new(
                BoundState::new(1, 0, 0).unwrap(),
                BoundState::new(3, 2, 2).unwrap(),
                LGMode::new(0, 1, photon),
                LGMode::new(0, -1, photon),
                ScatteringAngle::new(0.0).unwrap(),
            )
            .unwrap();
            cfg.integrator = IntegratorConfig {
                abs_tol: 1e-22,
                rel_tol: 1e-8,
                max_evals: 100_000_000,
                max_regions: 2_000_000,
            };
            let (mv, quad) = vortex_form_factor(&cfg).unwrap();
            println!(
                "zrsweep zr={zr:.0e}: |Mv|={:.6e} err={:.2e} conv={}",
                mv.norm(),
                quad.error_est,
                quad.converged
            );
        }
    }
}
