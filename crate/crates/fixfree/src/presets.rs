//! Element-set presets: the per-family choice of `(q, t, coset)` shipped in
//! `presets/choices.toml`, with the dimension left to the caller.

use serde::Deserialize;

const CHOICES: &str = include_str!("../presets/choices.toml");

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
pub struct Preset {
    pub name: String,
    pub family: String,
    pub q: u32,
    pub t: usize,
    pub coset: String,
    pub note: String,
}

#[derive(Deserialize)]
struct File {
    preset: Vec<Preset>,
}

pub fn presets() -> Vec<Preset> {
    toml::from_str::<File>(CHOICES).expect("bundled presets parse").preset
}

pub fn find(name: &str) -> Option<Preset> {
    presets().into_iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::{parse_coset, parse_family};

    #[test]
    fn bundled_presets_are_well_formed() {
        let all = presets();
        assert!(all.len() >= 5);
        for p in &all {
            assert!(parse_family(&p.family).is_ok(), "{}", p.name);
            assert!(parse_coset(&p.coset).is_ok(), "{}", p.name);
            assert!(p.t >= 1);
        }
        let mut names: Vec<&str> = all.iter().map(|p| p.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), all.len());
        assert_eq!(find("sp-q2").unwrap().t, 2);
    }
}
