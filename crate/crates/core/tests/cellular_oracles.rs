use std::collections::BTreeMap;

use lagrep_core::cellular::{
    builtin, chain_complex_of, classify_surface, homology_of, Cell, CellError, ClassifyError,
    Incidence,
};
use lagrep_core::{Builtin, CellComplex};

/// Simplicial complex from its top simplices (vertex labels sorted), with
/// the usual alternating-sign boundary.
fn simplicial(top: &[Vec<usize>]) -> CellComplex {
    let mut faces: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
    fn close(s: &[usize], faces: &mut BTreeMap<Vec<usize>, ()>) {
        if s.is_empty() || faces.insert(s.to_vec(), ()).is_some() {
            return;
        }
        for k in 0..s.len() {
            let mut f = s.to_vec();
            f.remove(k);
            close(&f, faces);
        }
    }
    for s in top {
        let mut s = s.clone();
        s.sort_unstable();
        close(&s, &mut faces);
    }
    let name = |s: &[usize]| {
        s.iter()
            .map(|v| format!("v{v}"))
            .collect::<Vec<_>>()
            .join("_")
    };
    let cells = faces
        .keys()
        .map(|s| Cell {
            id: name(s),
            dim: (s.len() - 1) as u32,
        })
        .collect();
    let mut incidence = Vec::new();
    for s in faces.keys().filter(|s| s.len() > 1) {
        for k in 0..s.len() {
            let mut f = s.clone();
            f.remove(k);
            incidence.push(Incidence {
                from: name(s),
                to: name(&f),
                coeff: if k % 2 == 0 { 1 } else { -1 },
            });
        }
    }
    CellComplex { cells, incidence }
}

fn betti(cc: &CellComplex) -> Vec<usize> {
    let h = homology_of(cc).unwrap();
    (0..=2).map(|i| h.dim(i)).collect()
}

fn tetrahedron_boundary() -> CellComplex {
    simplicial(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
}

/// 3×3 grid on the square with opposite sides identified.
fn grid_torus() -> CellComplex {
    let v = |i: usize, j: usize| 3 * (i % 3) + (j % 3);
    let mut top = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            top.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            top.push(vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    simplicial(&top)
}

#[test]
fn subdivided_sphere() {
    let cc = tetrahedron_boundary();
    assert_eq!((cc.count(0), cc.count(1), cc.count(2)), (4, 6, 4));
    assert_eq!(cc.cells.len(), 14);
    assert_eq!(betti(&cc), vec![1, 0, 1]);
    assert_eq!(cc.euler_characteristic(), 2);
    let v = classify_surface(&cc).unwrap();
    assert_eq!((v.genus, v.euler), (0, 2));
}

#[test]
fn octahedron_is_a_sphere() {
    // poles 0, 5 over the square 1-2-3-4
    let ring = [1, 2, 3, 4];
    let mut top = Vec::new();
    for k in 0..4 {
        let (a, b) = (ring[k], ring[(k + 1) % 4]);
        top.push(vec![0, a, b]);
        top.push(vec![5, a, b]);
    }
    let cc = simplicial(&top);
    assert_eq!(betti(&cc), vec![1, 0, 1]);
    assert_eq!(classify_surface(&cc).unwrap().genus, 0);
}

#[test]
fn triangulated_torus() {
    let cc = grid_torus();
    assert_eq!((cc.count(0), cc.count(1), cc.count(2)), (9, 27, 18));
    assert_eq!(betti(&cc), vec![1, 2, 1]);
    let v = classify_surface(&cc).unwrap();
    assert_eq!((v.genus, v.euler), (1, 0));
}

#[test]
fn builtin_surfaces() {
    assert_eq!(betti(&builtin(Builtin::Sphere)), vec![1, 0, 1]);
    assert_eq!(betti(&builtin(Builtin::Torus)), vec![1, 2, 1]);
    assert_eq!(betti(&builtin(Builtin::Circle)), vec![1, 1, 0]);
    for g in 0..=5u32 {
        let cc = builtin(Builtin::Genus(g));
        assert_eq!(betti(&cc), vec![1, 2 * g as usize, 1]);
        assert_eq!(cc.euler_characteristic(), 2 - 2 * i64::from(g));
        let v = classify_surface(&cc).unwrap();
        assert_eq!((v.genus, v.euler), (g, 2 - 2 * i64::from(g)));
    }
}

#[test]
fn circle_is_not_a_surface() {
    assert!(matches!(
        classify_surface(&builtin(Builtin::Circle)),
        Err(ClassifyError::NoFundamentalClass(0))
    ));
}

#[test]
fn two_points_are_disconnected() {
    let cc = CellComplex {
        cells: vec![
            Cell {
                id: "p".into(),
                dim: 0,
            },
            Cell {
                id: "q".into(),
                dim: 0,
            },
        ],
        incidence: Vec::new(),
    };
    assert_eq!(betti(&cc), vec![2, 0, 0]);
    assert!(matches!(
        classify_surface(&cc),
        Err(ClassifyError::Disconnected(2))
    ));
}

#[test]
fn boundary_of_boundary_must_vanish() {
    // a 2-cell whose boundary is a single edge with two distinct endpoints
    let mut cc = simplicial(&[vec![0, 1]]);
    cc.cells.push(Cell {
        id: "f".into(),
        dim: 2,
    });
    cc.incidence.push(Incidence {
        from: "f".into(),
        to: "v0_v1".into(),
        coeff: 1,
    });
    assert!(matches!(
        chain_complex_of(&cc),
        Err(CellError::InconsistentIncidence(2))
    ));
}

#[test]
fn euler_matches_homology_on_simplicial_examples() {
    for cc in [
        tetrahedron_boundary(),
        grid_torus(),
        simplicial(&[vec![0, 1, 2, 3]]),
    ] {
        let h = homology_of(&cc).unwrap();
        assert_eq!(h.euler_characteristic(), cc.euler_characteristic());
    }
    // a solid tetrahedron is contractible
    assert_eq!(betti(&simplicial(&[vec![0, 1, 2, 3]])), vec![1, 0, 0]);
}
