use std::path::PathBuf;

use vasskit::knotio::{four_plat, parse_gauss, parse_pd, PlatGenerator, Sign};
use vasskit::poly::{int, Poly};
use vasskit::vassiliev::{conway_knot, vassiliev_extend, V2};
use vasskit::{MorseEmbedding, SingularKnotDiagram};

fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn plat(word: &[(usize, Sign)]) -> MorseEmbedding {
    four_plat(&word.iter().map(|&(s, g)| PlatGenerator::new(s, g)).collect::<Vec<_>>()).unwrap()
}

fn lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

#[test]
fn shipped_embeddings_project_to_the_right_knots() {
    use Sign::*;
    let cases = [
        ("circle.json", None, Poly::one(), 1),
        ("matched_unknot.json", Some(vec![(2, Positive)]), Poly::one(), 2),
        ("trefoil.json", Some(vec![(2, Positive); 3]), Poly::from_ints(&[1, 0, 1]), 2),
        (
            "figure_eight.json",
            Some(vec![(2, Positive), (2, Positive), (1, Negative), (2, Positive)]),
            Poly::from_ints(&[1, 0, -1]),
            2,
        ),
    ];
    for (file, word, conway, maxima) in cases {
        let e = MorseEmbedding::from_json(&data(file)).unwrap();
        assert_eq!(e.maxima(), maxima, "{file}");
        assert_eq!(conway_knot(&e.projection().unwrap()).unwrap(), conway, "{file}");
        if let Some(w) = word {
            assert_eq!(e, plat(&w), "{file} is out of date");
        }
    }
}

#[test]
fn gauss_and_pd_files_agree() {
    let table = data("knots.txt");
    let mut found = std::collections::BTreeMap::new();
    for line in lines(&table) {
        let (name, code) = line.split_once(':').unwrap();
        found.insert(name.trim().to_string(), conway_knot(&parse_gauss(code).unwrap()).unwrap());
    }
    assert_eq!(found["unknot"], Poly::one());
    assert_eq!(found["trefoil"].coeff(2), int(1));
    assert_eq!(found["figure_eight"].coeff(2), int(-1));
    assert_eq!(found["cinquefoil"], Poly::from_ints(&[1, 0, 3, 0, 1]));
    for name in ["trefoil", "figure_eight"] {
        let pd = parse_pd(data(&format!("{name}.pd")).trim()).unwrap();
        assert_eq!(conway_knot(&pd.to_gauss().unwrap()).unwrap(), found[name]);
    }
}

#[test]
fn v2_vanishes_on_three_node_knots() {
    let text = data("singular3.txt");
    let mut count = 0;
    for line in lines(&text) {
        let s: SingularKnotDiagram = line.parse().unwrap();
        assert_eq!(s.node_count(), 3);
        assert!(vassiliev_extend(&V2::default(), &s).unwrap().is_zero(), "{line}");
        count += 1;
    }
    assert_eq!(count, 6);
}
