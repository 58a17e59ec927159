//! Property tests for down-right paths.

use proptest::prelude::*;
use stripgibbs_core::{DownRightPath, ModelKind, ModelParams, Step};

fn path_strategy() -> impl Strategy<Value = DownRightPath> {
    (1usize..8).prop_flat_map(|n| {
        (proptest::collection::vec(any::<bool>(), n), 0i64..3).prop_map(|(bits, extra)| {
            let steps: Vec<Step> = bits
                .into_iter()
                .map(|b| if b { Step::Right } else { Step::Down })
                .collect();
            let downs = steps.iter().filter(|s| **s == Step::Down).count() as i64;
            DownRightPath::new(downs + extra, steps).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn translation_shifts_labels_cyclically(path in path_strategy()) {
        let n = path.n();
        let bulk: Vec<f64> = (0..n).map(|i| 0.05 + 0.1 * i as f64).collect();
        let params = ModelParams::new(ModelKind::GeometricLpp, bulk, 1.0, 1.0).unwrap();
        let mut q = path.clone();
        for mv in path.tau1_schedule() {
            q = q.apply_local_move(mv).unwrap();
        }
        prop_assert_eq!(&q, &path.translate(1));
        let before = path.edge_label_indices();
        let after = q.edge_label_indices();
        for (b, a) in before.iter().zip(&after) {
            prop_assert_eq!(*a, b + 1);
        }
        let lb = path.edge_labels(&params);
        let la = q.edge_labels(&params);
        for (j, x) in la.iter().enumerate() {
            prop_assert_eq!(*x, params.label(before[j] + 1));
        }
        prop_assert_eq!(lb.len(), la.len());
    }

    #[test]
    fn each_move_changes_one_vertex(path in path_strategy()) {
        let n = path.n();
        for j in 0..=n {
            let mv = stripgibbs_core::LocalMove::at(j, n);
            if let Ok(q) = path.apply_local_move(mv) {
                let changed: Vec<usize> = path
                    .vertices()
                    .iter()
                    .zip(q.vertices())
                    .enumerate()
                    .filter(|(_, (a, b))| **a != *b)
                    .map(|(i, _)| i)
                    .collect();
                prop_assert_eq!(changed, vec![j]);
                let (x, y) = path.vertices()[j];
                prop_assert_eq!(q.vertices()[j], (x + 1, y + 1));
            }
        }
    }
}
