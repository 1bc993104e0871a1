//! Scratch ground-truth scan (not part of the deliverable test surface):
//! establishes exact k-hyponormality orders for the shifts the acceptance
//! suite pins down, by exhaustive exact Hankel scans.

use opshift::classify::{hankel_matrix, is_psd_exact, PsdVerdict};
use opshift::seq::{moments, schur_product, SqWeightSeq};
use opshift::{rat, rat_int, Rat};

fn scan(label: &str, w: &SqWeightSeq, k: usize, n_hi: u64) {
    let gamma = moments(w, n_hi as usize + 2 * k + 2);
    let mut first_neg: Option<(u64, Vec<usize>, Rat)> = None;
    for n in 0..=n_hi {
        let m = hankel_matrix(&gamma, n, k).unwrap();
        if let PsdVerdict::NotPsd { subset, minor } = is_psd_exact(&m) {
            first_neg = Some((n, subset, minor));
            break;
        }
    }
    match first_neg {
        Some((n, subset, minor)) => println!(
            "{label}: order k={k}: FIRST NEGATIVE at n={n}, subset {subset:?}, minor ~ {:.3e}",
            minor.to_f64()
        ),
        None => println!("{label}: order k={k}: PSD for all n <= {n_hi}"),
    }
}

fn main() {
    // Motivating product shift, founder 3: (2^n+2)(2^n+3)/(2^n+4)^2
    let w1 = SqWeightSeq::grws(rat_int(2), rat_int(3), rat_int(4)).unwrap();
    let w2 = SqWeightSeq::grws(rat_int(2), rat_int(2), rat_int(4)).unwrap();
    let prod = schur_product(&w2, &w1);
    scan("product founder 3", &prod, 2, 200);
    scan("product founder 3", &prod, 3, 60);
    // founder 5 product: (3·2^n+2)(3·2^n+3)/(3·2^n+4)^2
    let f5a = SqWeightSeq::grws(rat_int(2), rat(2, 3), rat(4, 3)).unwrap();
    let f5b = SqWeightSeq::grws(rat_int(2), rat_int(1), rat(4, 3)).unwrap();
    let prod5 = schur_product(&f5a, &f5b);
    scan("product founder 5", &prod5, 2, 120);
    // factors alone
    scan("factor W1 = grws(3,4) [band, ratio 4/3]", &w1, 2, 40);
    scan("factor W2 = grws(2,4) [ray,  ratio 2]", &w2, 4, 40);

    // Equal-powers case s = t: factor is grws(1/j, (s+1)/j), ratio s+1.
    for s in [2i64, 4, 5, 6] {
        for j in [1i64, 3, 4] {
            let f = SqWeightSeq::grws(rat_int(2), rat(1, j), rat(s + 1, j)).unwrap();
            let label = format!("s={s} j={j} grws(1/{j},{}/{j}) ratio {}", s + 1, s + 1);
            for k in 1..=4usize {
                scan(&label, &f, k, if k <= 2 { 160 } else { 80 });
            }
        }
    }

    // Band samples inside the unit parameter square.
    for (n, d, tag) in [
        ((1i64, 3i64), (1i64, 2i64), "band between rays 0 and 1 (ratio 3/2)"),
        ((1, 5), (3, 5), "band between rays 1 and 2 (ratio 3)"),
        ((1, 9), (2, 3), "band between rays 2 and 3 (ratio 6)"),
    ] {
        let f = SqWeightSeq::grws(rat_int(2), Rat::from(n), Rat::from(d)).unwrap();
        let label = format!("{tag}");
        for k in 1..=5usize {
            scan(&label, &f, k, if k <= 2 { 160 } else { 100 });
        }
    }
}
