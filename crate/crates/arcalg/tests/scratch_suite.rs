use arcalg::algebra::CoactionVariant;
use arcalg::verify;
use std::time::Instant;

#[test]
fn scratch_timings() {
    let t = Instant::now();
    let rep1 = verify::associativity_report(1, CoactionVariant::Paper);
    println!("assoc n=1 paper: failures={} degviol={} ({:?})", rep1.failures.len(), rep1.degree_additivity_violations, t.elapsed());

    let t = Instant::now();
    let rep2p = verify::associativity_report(2, CoactionVariant::Paper);
    println!("assoc n=2 paper: quadruples={} triples={} failures={} degviol={} ({:?})",
        rep2p.quadruples, rep2p.basis_triples, rep2p.failures.len(), rep2p.degree_additivity_violations, t.elapsed());
    for f in rep2p.failures.iter().take(5) {
        println!("  FAIL objs={:?} in={:?} left={} right={}", f.objects, f.inputs, f.left, f.right);
    }

    let t = Instant::now();
    let rep2h = verify::associativity_report(2, CoactionVariant::Homogeneous);
    println!("assoc n=2 homog: failures={} degviol={} ({:?})", rep2h.failures.len(), rep2h.degree_additivity_violations, t.elapsed());
    for f in rep2h.failures.iter().take(5) {
        println!("  FAIL objs={:?} in={:?} left={} right={}", f.objects, f.inputs, f.left, f.right);
    }

    let t = Instant::now();
    let rot = verify::rotation_suite(2);
    println!("rotation n<=2: {} lines, all pass: {} ({:?})", rot.len(), verify::all_passed(&rot), t.elapsed());

    let t = Instant::now();
    let ord = verify::order_independence_suite(2, CoactionVariant::Paper);
    println!("order-indep n<=2: {} lines, all pass: {} ({:?})", ord.len(), verify::all_passed(&ord), t.elapsed());

    let t = Instant::now();
    let oracle = verify::oracle_suite(3);
    println!("oracle n<=3: all pass: {} ({:?})", verify::all_passed(&oracle), t.elapsed());
    for l in &oracle { println!("  {l}"); }
}
