use std::f64::consts::PI;
use std::time::Instant;

use superalg::schrodinger::{
    count_below, discretize, eigenvalues_below, extrapolated_levels, lowest_eigenvalues, q5_levels, q5_x_potential, well_levels, Grid1D,
    NumericOptions, Well,
};

#[test]
fn box_calibration() {
    let t = discretize(|_| 0.0, &Grid1D::new(0.0, 1.0, 2000).unwrap()).unwrap();
    let e = lowest_eigenvalues(&t, 1, 1e-12)[0];
    assert!((e - PI * PI / 2.0).abs() < 1e-3, "{e}");
}

#[test]
fn harmonic_calibration() {
    let t = discretize(|y| y * y / 8.0, &Grid1D::new(-12.0, 12.0, 4000).unwrap()).unwrap();
    let e = lowest_eigenvalues(&t, 3, 1e-12);
    for (j, v) in e.iter().enumerate() {
        assert!((v - (j as f64 + 0.5) / 2.0).abs() < 1e-4, "{e:?}");
    }
}

#[test]
fn sturm_count_matches_eigenvalues() {
    let t = discretize(|x| x.sin() * 3.0, &Grid1D::new(0.0, 5.0, 60).unwrap()).unwrap();
    let all = lowest_eigenvalues(&t, 60, 1e-12);
    for w in all.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        assert_eq!(count_below(&t, mid), all.iter().filter(|&&e| e < mid).count());
    }
    assert_eq!(eigenvalues_below(&t, all[10] + 1e-9, 1e-12).len(), 11);
}

// Reference values from an independent dense eigensolver on the same
// three-point discretization (n = 1000 on the middle well, n = 4000 on the
// outer well [1, 9]).
#[test]
fn q5_wells_against_dense_solver() {
    let v = q5_x_potential(1.0);
    let mid = lowest_eigenvalues(&discretize(v, &Grid1D::new(-1.0, 1.0, 1000).unwrap()).unwrap(), 2, 1e-12);
    assert!((mid[0] - 4.47009604).abs() < 1e-7, "{mid:?}");
    assert!((mid[1] - 10.64212289).abs() < 1e-7, "{mid:?}");
    let outer = lowest_eigenvalues(&discretize(v, &Grid1D::new(1.0, 9.0, 4000).unwrap()).unwrap(), 2, 1e-12);
    assert!((outer[0] - 1.95056552).abs() < 1e-7, "{outer:?}");
    assert!((outer[1] - 3.10023982).abs() < 1e-7, "{outer:?}");
}

#[test]
fn refinement_and_confinement() {
    let t = Instant::now();
    let opts = NumericOptions::default();
    let base = q5_levels(&opts).unwrap();
    let finer = q5_levels(&NumericOptions { grid: 2 * opts.grid + 1, ..opts }).unwrap();
    let wider = q5_levels(&NumericOptions { wall: 16.0, ..opts }).unwrap();
    assert_eq!(base.len(), finer.len());
    assert_eq!(base.len(), wider.len());
    for ((b, f), w) in base.iter().zip(&finer).zip(&wider) {
        assert!((b.energy - f.energy).abs() < 2e-3);
        assert!((b.energy - w.energy).abs() < 2e-3);
    }
    eprintln!("lowest levels {:?} ({:?})", base.iter().take(6).map(|l| l.energy).collect::<Vec<_>>(), t.elapsed());
    let outer = well_levels(&opts, Well::Outer).unwrap();
    assert!((outer[0] - 1.950566).abs() < 2e-5, "{outer:?}");
    // the outer well counts twice
    assert_eq!(base[0].well, Well::Outer);
    assert_eq!(base[0].energy, base[1].energy);
}

#[test]
fn richardson_improves_middle_well() {
    let v = q5_x_potential(1.0);
    let coarse = Grid1D::new(-1.0, 1.0, 200).unwrap();
    let e = extrapolated_levels(v, &coarse, 1, 1e-12).unwrap()[0];
    let reference = lowest_eigenvalues(&discretize(v, &Grid1D::new(-1.0, 1.0, 8000).unwrap()).unwrap(), 1, 1e-12)[0];
    let plain = lowest_eigenvalues(&discretize(v, &coarse).unwrap(), 1, 1e-12)[0];
    assert!((e - reference).abs() < (plain - reference).abs() / 10.0);
}
