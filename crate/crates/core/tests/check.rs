use stablelike::check::{run_checks, Fault, FaultyKernel, ReferenceKernel, Suite};

#[test]
fn reference_kernel_passes_everything() {
    let r = run_checks(Suite::All, &ReferenceKernel);
    for row in &r.rows {
        println!(
            "{:<28} err={:.3e} tol={:.1e} {}",
            row.name, row.max_error, row.tolerance, row.worst_input
        );
    }
    assert!(r.passed, "{}", r.table());
    assert!(r.rows.len() >= 12);
}

#[test]
fn digamma_fault_is_caught() {
    let r = run_checks(Suite::Specfun, &FaultyKernel { fault: Fault::Digamma });
    assert!(!r.passed);
    let failed: Vec<_> = r.failures().map(|f| f.name.as_str()).collect();
    assert!(failed.contains(&"digamma_recurrence"), "{failed:?}");
    assert!(failed.iter().all(|n| n.starts_with("digamma")), "{failed:?}");
}

#[test]
fn gamma_fault_is_caught() {
    let r = run_checks(Suite::Specfun, &FaultyKernel { fault: Fault::Gamma });
    let failed: Vec<_> = r.failures().map(|f| f.name.as_str()).collect();
    assert!(failed.contains(&"gamma_recurrence"), "{failed:?}");
}

#[test]
fn hyp2f1_fault_is_caught() {
    let r = run_checks(Suite::Specfun, &FaultyKernel { fault: Fault::Hyp2f1 });
    let failed: Vec<_> = r.failures().map(|f| f.name.as_str()).collect();
    assert!(failed.contains(&"hyp2f1_dispatch"), "{failed:?}");
}

#[test]
fn suite_names_parse() {
    assert_eq!("specfun".parse::<Suite>().unwrap(), Suite::Specfun);
    assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
    assert!("nope".parse::<Suite>().is_err());
}
