//! Expected values computed outside this crate: hypervolumes as the area of a
//! union of boxes (shapely), crowding distances and contributions from a
//! direct transcription of the definitions.

mod common;

use common::{lattice_hv, v};
use moea_archive::hypervolume::{contributions, hypervolume_2d};
use moea_archive::ranking::crowding_distances;
use moea_archive::{Bitstring, Individual, ObjectiveVector, ReferencePoint};

type Case<'a, T> = (&'a [(i64, i64)], T);

fn pts(raw: &[(i64, i64)]) -> Vec<ObjectiveVector> {
    raw.iter().map(|&(a, b)| v(a, b)).collect()
}

#[test]
fn hypervolume_matches_box_union_areas() {
    let cases: [Case<i128>; 5] = [
        (&[(19, 8)], 180),
        (&[(11, 20), (16, 0), (14, 7)], 278),
        (&[(20, 1), (5, 3), (11, 15), (7, 12), (17, 3)], 222),
        (
            &[
                (18, 7),
                (0, 6),
                (13, 8),
                (5, 12),
                (5, 2),
                (4, 19),
                (19, 14),
                (4, 4),
            ],
            325,
        ),
        (
            &[
                (0, 0),
                (6, 6),
                (5, 5),
                (9, 10),
                (6, 17),
                (20, 6),
                (5, 6),
                (12, 9),
                (0, 11),
                (13, 5),
                (4, 8),
                (2, 10),
            ],
            245,
        ),
    ];
    for (raw, want) in cases {
        let p = pts(raw);
        assert_eq!(
            hypervolume_2d(&p, ReferencePoint::default()).unwrap(),
            want,
            "{raw:?}"
        );
        assert_eq!(lattice_hv(&p, (-1, -1)), want, "{raw:?}");
    }
}

#[test]
fn crowding_matches_reference_values() {
    let inf = f64::INFINITY;
    let cases: [Case<&[f64]>; 3] = [
        (&[(11, 1), (9, 3), (4, 8)], &[inf, 2.0, inf]),
        (
            &[(1, 11), (11, 1), (7, 5), (4, 8), (5, 7)],
            &[inf, inf, 1.2, 0.8, 0.6],
        ),
        (
            &[(10, 2), (4, 8), (2, 10), (11, 1), (6, 6), (0, 12), (5, 7)],
            &[
                10.0 / 11.0,
                6.0 / 11.0,
                8.0 / 11.0,
                inf,
                10.0 / 11.0,
                inf,
                4.0 / 11.0,
            ],
        ),
    ];
    for (raw, want) in cases {
        let front: Vec<Individual> = pts(raw)
            .into_iter()
            .map(|f| Individual::new(Bitstring::zeros(1).unwrap(), f))
            .collect();
        let got = crowding_distances(&front);
        for (g, w) in got.iter().zip(want) {
            assert!(
                g == w || (g - w).abs() < 1e-12,
                "{raw:?}: {got:?} vs {want:?}"
            );
        }
    }
}

#[test]
fn contributions_match_leave_one_out_areas() {
    let front = pts(&[(0, 6), (2, 4), (3, 3), (5, 1), (6, 0)]);
    assert_eq!(
        contributions(&front, ReferencePoint::default()).unwrap(),
        [2, 2, 2, 2, 1]
    );
}
