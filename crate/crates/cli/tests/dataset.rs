use std::fs;

use sparsemoo_cli::dataset::load_dataset;
use sparsemoo_cli::CliError;

fn write(content: &str) -> (tempfile::TempDir, std::path::PathBuf) {
    let d = tempfile::tempdir().unwrap();
    let p = d.path().join("d.csv");
    fs::write(&p, content).unwrap();
    (d, p)
}

#[test]
fn standardizes_with_population_sd() {
    let (_d, p) = write("a,y\n1,0\n2,1\n3,1\n");
    let ds = load_dataset(&p, "y").unwrap();
    let sd = (2.0f64 / 3.0).sqrt();
    let want = [-1.0 / sd, 0.0, 1.0 / sd];
    for (g, w) in ds.samples.iter().zip(want) {
        assert!((g - w).abs() < 1e-15);
    }
    assert!((want[2] - 1.224744871391589).abs() < 1e-12);
    assert_eq!(ds.labels, vec![-1.0, 1.0, 1.0]);
}

#[test]
fn drops_incomplete_rows_and_zeroes_constant_columns() {
    let (_d, p) = write("a,b,label\n1,5,1\n,5,0\n3,5,0\n2,,1\n");
    let ds = load_dataset(&p, "label").unwrap();
    assert_eq!((ds.rows, ds.dropped_rows), (2, 2));
    assert_eq!(ds.constant_columns, vec!["b".to_string()]);
    assert_eq!(ds.samples, vec![-1.0, 0.0, 1.0, 0.0]);
    assert_eq!(ds.labels, vec![1.0, -1.0]);
}

#[test]
fn reports_location_of_bad_cells() {
    let (_d, p) = write("a,b,label\n1,2,1\n1,x,0\n");
    match load_dataset(&p, "label") {
        Err(CliError::Data(m)) => assert!(m.contains("line 3") && m.contains("'b'"), "{m}"),
        other => panic!("{other:?}"),
    }
    let (_d, p) = write("a,label\n1,2\n");
    assert!(matches!(load_dataset(&p, "label"), Err(CliError::Data(_))));
    assert!(matches!(load_dataset(&p, "missing"), Err(CliError::Data(_))));
}

#[test]
fn bundled_datasets_are_standardized() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    for (file, rows, cols) in [("wine_binary.csv", 178, 13), ("breast_cancer_300.csv", 300, 30)] {
        let ds = load_dataset(&dir.join(file), "label").unwrap();
        assert_eq!((ds.rows, ds.cols()), (rows, cols));
        for c in 0..cols {
            let col: Vec<f64> = (0..rows).map(|r| ds.samples[r * cols + c]).collect();
            let mean = col.iter().sum::<f64>() / rows as f64;
            let var = col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / rows as f64;
            assert!(mean.abs() < 1e-9 && (var.sqrt() - 1.0).abs() < 1e-9);
        }
        assert!(ds.labels.iter().all(|t| t.abs() == 1.0));
    }
}
