use comatroid::constructions::{catalog_names, named};
use comatroid::presentation::{parse_matroid_text, to_point_text};

#[test]
fn catalog_entries_round_trip() {
    for name in catalog_names() {
        let p = named(&name).unwrap();
        let m = p.embed().unwrap().matroid;
        let back = parse_matroid_text(&p.to_text())
            .unwrap()
            .into_embedded()
            .unwrap();
        assert_eq!(back.matroid, m, "{name}");
        let points = parse_matroid_text(&to_point_text(&m))
            .unwrap()
            .into_embedded()
            .unwrap();
        assert_eq!(points.matroid, m, "{name}");
    }
}
