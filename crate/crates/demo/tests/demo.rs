use adjunction_demo::{cube_point, example, psi_point, psi_sample, warp};

#[test]
fn warp_reports_the_closed_form_lengths() {
    let v = warp(0.5, 3.0, "claimed", 61).unwrap();
    assert_eq!(v["inner_length"].as_f64(), Some(2.0));
    assert_eq!(v["total_length"].as_f64(), Some(4.5));
    let profile = v["profile"].as_array().unwrap();
    assert_eq!(profile.len(), 61);
    assert_eq!(profile[0][1].as_f64(), Some(0.0));
    assert_eq!(profile[30][1].as_f64(), Some(1.0));
    assert_eq!(profile[30][2].as_f64(), Some(4.0));
    assert!(warp(0.5, 3.0, "sideways", 10).is_err());
}

#[test]
fn psi_sample_round_trips() {
    for n in 0..=4 {
        let v = psi_sample(n, 2.0, 11).unwrap();
        assert!(v["round_trip_error"].as_f64().unwrap() <= 1e-12, "{v}");
        let x = v["cube"].as_array().unwrap();
        assert_eq!(x[v["pinned"].as_u64().unwrap() as usize].as_f64(), Some(2.0));
    }
    assert!(psi_sample(7, 1.0, 0).is_err());
}

#[test]
fn edited_points_and_cube_points() {
    let v = psi_point(1, 1.0, r#"{"chain":[[0,1]],"t":[1.0],"r":{"0":1.0,"1":0.5}}"#).unwrap();
    assert_eq!(v["cube"], serde_json::json!([1.0, 0.75]));
    let back = cube_point(1, 1.0, "[1.0, 0.25]").unwrap();
    assert_eq!(back["pinned"], 0);
    assert!(cube_point(1, 1.0, "[0.5, 0.5]").is_err());
    assert!(psi_point(1, 1.0, "{not json").is_err());
}

#[test]
fn example_homology_matches_the_circle() {
    let v = example("ex46", 2, 3, 9).unwrap();
    assert_eq!(v["certified"], true);
    assert_eq!(v["f_vector"], serde_json::json!([4, 4]));
    assert_eq!(v["groups"][1]["homology"], "ℤ");
    assert_eq!(v["groups"][0]["reduced"], "0");
    assert_eq!(v["cycle_terms"], 4);
}
