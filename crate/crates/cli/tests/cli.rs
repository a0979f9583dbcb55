use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use adc_cli::{run, CellDocument, Cli, ComplexDocument};
use adc_core::{
    atom_cell, composable_pair, composable_triple, cube, enumerate_cells, globe, interchange_quad, simplex, tensor,
    AugmentedComplex, BasisId, CompositionTree, Sign,
};
use clap::Parser;
use tempfile::TempDir;

fn adc(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_adc")).args(args).output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn write_complex(dir: &Path, name: &str, k: &AugmentedComplex) -> PathBuf {
    write(dir, name, &ComplexDocument::from_complex(k).to_json())
}

fn run_lib(args: &[&str]) -> String {
    let cli = Cli::try_parse_from(std::iter::once("adc").chain(args.iter().copied())).unwrap();
    run(&cli, &mut std::io::empty()).unwrap().text
}

#[test]
fn complexes_round_trip() {
    let mut ks = vec![
        cube(3),
        interchange_quad(2, 1, 0).unwrap(),
        composable_triple(2, 1),
        composable_pair(3, 0),
    ];
    ks.extend((0..=4).map(simplex));
    ks.extend((0..=3).map(globe));
    ks.push(tensor(&simplex(2), &globe(1)).unwrap());
    for k in ks {
        let json = ComplexDocument::from_complex(&k).to_json();
        let back = ComplexDocument::parse(&json).unwrap().to_complex().unwrap();
        assert_eq!(back, k);
    }
}

#[test]
fn cells_round_trip() {
    for k in [simplex(2), cube(2)] {
        for x in enumerate_cells(&k, 2) {
            let json = CellDocument::from_cell(&x).to_json();
            let back = CellDocument::parse(&json).unwrap().to_cell(&k).unwrap();
            assert_eq!(back, x);
            assert!(back.is_nu());
        }
    }
}

#[test]
fn decompose_output_evaluates_to_input() {
    let dir = TempDir::new().unwrap();
    let k = simplex(3);
    let kp = write_complex(dir.path(), "k.json", &k);
    for (i, x) in enumerate_cells(&k, 3).iter().enumerate() {
        let cp = write(dir.path(), &format!("x{i}.json"), &CellDocument::from_cell(x).to_json());
        let word = run_lib(&["decompose", "-i", kp.to_str().unwrap(), cp.to_str().unwrap()]);
        let tree = CompositionTree::parse(word.trim()).unwrap();
        assert_eq!(&tree.evaluate(&k).unwrap(), x, "{word}");
    }
}

#[test]
fn gen_sizes() {
    for (args, size) in [(vec!["gen", "simplex", "2"], 7), (vec!["gen", "cube", "2"], 9)] {
        let (out, _, code) = adc(&args);
        assert_eq!(code, 0);
        let k = ComplexDocument::parse(&out).unwrap().to_complex().unwrap();
        assert_eq!(k.len(), size);
    }
    let (out, _, _) = adc(&["gen", "quad", "2", "1", "0"]);
    let k = ComplexDocument::parse(&out).unwrap().to_complex().unwrap();
    assert_eq!(k, interchange_quad(2, 1, 0).unwrap());
    let (_, err, code) = adc(&["gen", "pair", "2"]);
    assert_eq!(code, 2, "{err}");
    let (_, _, code) = adc(&["gen", "quad", "2", "0", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn check_reports() {
    let dir = TempDir::new().unwrap();
    let p = write_complex(dir.path(), "s3.json", &simplex(3));
    let (out, _, code) = adc(&["check", "-i", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    for key in ["valid", "unital", "loop_free", "strongly_loop_free", "atom_invariants"] {
        assert!(out.contains(&format!("{key}=true\n")), "{key} in {out}");
    }

    let circle = r#"{
        "basis": [["p", "q"], ["e", "f"]],
        "boundary": {"e": {"q": 1, "p": -1}, "f": {"p": 1, "q": -1}},
        "augmentation": {"p": 1, "q": 1}
    }"#;
    let p = write(dir.path(), "circle.json", circle);
    let (out, _, code) = adc(&["check", "-i", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(
        out.contains("strongly_loop_free=false\nstrong_cycle=p e q f\n"),
        "{out}"
    );
    assert!(out.contains("loop_free=false\nloop_level=0\nloop_cycle=e f\n"), "{out}");

    let corrupted = r#"{
        "basis": [["0", "1", "2"], ["01", "02", "12"], ["012"]],
        "boundary": {
            "01": {"1": 1, "0": -1}, "02": {"2": 1, "0": -1}, "12": {"2": 1, "1": -1},
            "012": {"12": 1, "02": 1, "01": 1}
        },
        "augmentation": {"0": 1, "1": 1, "2": 1}
    }"#;
    let p = write(dir.path(), "bad.json", corrupted);
    let (out, _, code) = adc(&["check", "-i", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.starts_with("valid=false\nviolation=∂∂(012)"), "{out}");

    let p = write(dir.path(), "broken.json", "{\"basis\": [[\"0\"]],\n \"boundary\": [}");
    let (_, err, code) = adc(&["check", "-i", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn stdin_and_output_file() {
    let dir = TempDir::new().unwrap();
    let doc = ComplexDocument::from_complex(&simplex(1)).to_json();
    let out_path = dir.path().join("cells.txt");
    let mut child = Command::new(env!("CARGO_BIN_EXE_adc"))
        .args(["enumerate", "-n", "1", "-o", out_path.to_str().unwrap()])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(doc.as_bytes()).unwrap();
    let status = child.wait_with_output().unwrap();
    assert!(status.status.success());
    assert!(status.stdout.is_empty());
    let text = fs::read_to_string(out_path).unwrap();
    assert!(text.ends_with("total: 3\n"), "{text}");
}

#[test]
fn compose_and_decompose_triangle_target() {
    let dir = TempDir::new().unwrap();
    let k = simplex(2);
    let kp = write_complex(dir.path(), "k.json", &k);
    let a = write(
        dir.path(),
        "a.json",
        &CellDocument::from_cell(&atom_cell(&k, &"01".into()).unwrap()).to_json(),
    );
    let b = write(
        dir.path(),
        "b.json",
        &CellDocument::from_cell(&atom_cell(&k, &"12".into()).unwrap()).to_json(),
    );
    let (out, _, code) = adc(&[
        "compose",
        "-i",
        kp.to_str().unwrap(),
        "--level",
        "0",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let path = CellDocument::parse(&out).unwrap().to_cell(&k).unwrap();
    let target = atom_cell(&k, &BasisId::from("012")).unwrap().d(Sign::Plus, 1);
    assert_eq!(path, target);

    let p = write(dir.path(), "path.json", &out);
    let (word, _, code) = adc(&["decompose", "-i", kp.to_str().unwrap(), p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(word, "⟨01⟩ #0 ⟨12⟩\n");

    let (_, err, code) = adc(&[
        "compose",
        "-i",
        kp.to_str().unwrap(),
        "--level",
        "0",
        b.to_str().unwrap(),
        a.to_str().unwrap(),
    ]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn tensor_hom_present() {
    let dir = TempDir::new().unwrap();
    let g1 = write_complex(dir.path(), "g1.json", &globe(1));
    let s2 = write_complex(dir.path(), "s2.json", &simplex(2));

    let (out, _, code) = adc(&["tensor", "-i", g1.to_str().unwrap(), g1.to_str().unwrap()]);
    assert_eq!(code, 0);
    let k = ComplexDocument::parse(&out).unwrap().to_complex().unwrap();
    assert_eq!(k, tensor(&globe(1), &globe(1)).unwrap());

    for variant in ["hom", "hom-prime"] {
        let (out, _, code) = adc(&[
            "hom",
            "-i",
            g1.to_str().unwrap(),
            s2.to_str().unwrap(),
            "--variant",
            variant,
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["variant"], variant);
        assert_eq!(v["valid"], true);
        assert_eq!(v["zero_cells"], 7);
        assert_eq!(v["morphisms"].as_array().unwrap().len(), 7);
    }

    let gp = write_complex(dir.path(), "g2.json", &globe(2));
    let (out, _, code) = adc(&["present", "-i", gp.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("d-2⟨2⟩ = ⟨2⟩\nd+2⟨2⟩ = ⟨2⟩\n"), "{out}");
    assert!(out.contains("d-1⟨2⟩ = ⟨1⟩\nd+1⟨2⟩ = ⟨3⟩\n"), "{out}");
}
