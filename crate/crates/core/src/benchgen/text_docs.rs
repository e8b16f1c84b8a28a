//! Templated plain-text abstracts, one paragraph per film.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::names::CITIES;
use super::synth::{Film, World};

const PRAISE: &[&str] = &["haunting", "restrained", "luminous", "uneven", "bold", "patient"];

fn list(names: &[&str]) -> String {
    match names {
        [] => String::new(),
        [one] => one.to_string(),
        [init @ .., last] => format!("{} and {last}", init.join(", ")),
    }
}

fn distractor(rng: &mut ChaCha8Rng) -> String {
    match rng.random_range(0..5) {
        0 => "The sequel was directed by a newcomer.".to_string(),
        1 => format!("Critics praised its {} score.", PRAISE.choose(rng).expect("non-empty")),
        2 => format!("Filming took place in {}.", CITIES.choose(rng).expect("non-empty")),
        3 => "The premiere was produced by a local theatre company.".to_string(),
        _ => "Several scenes were shot at night without permits.".to_string(),
    }
}

fn film_abstract(world: &World, f: &Film, coverage: f64, distractor_rate: f64, rng: &mut ChaCha8Rng) -> String {
    let name = |p: usize| world.persons[p].name.as_str();
    let t = &f.title;
    let mut facts: Vec<String> = Vec::new();
    let mut keep = |rng: &mut ChaCha8Rng, s: String| {
        if rng.random_bool(coverage) {
            facts.push(s);
        }
    };
    keep(rng, format!("{t} was directed by {}.", name(f.director)));
    let stars: Vec<&str> = f.starring.iter().map(|&p| name(p)).collect();
    keep(rng, format!("{t} starred {}.", list(&stars)));
    keep(rng, format!("{t} was produced by {}.", name(f.producer)));
    keep(rng, format!("{t} was released in {}.", &f.release_date[..4]));
    keep(rng, format!("{t} runs for {} minutes.", f.runtime));
    keep(rng, format!("{} was born in {}.", name(f.director), world.persons[f.director].birth_place));
    let lead = f.starring[0];
    keep(rng, format!("{} was born in {}.", name(lead), world.persons[lead].birth_place));
    // facts no extraction rule covers
    keep(rng, format!("The music was composed by {}.", name(f.composer)));
    keep(rng, format!("The screenplay was written by {}.", name(f.writer)));
    keep(rng, format!("The film was distributed by {}.", world.companies[f.distributor].name));
    if let Some(g) = f.gross {
        keep(rng, format!("It grossed {g} dollars worldwide."));
    }
    for _ in 0..2 {
        if rng.random_bool(distractor_rate) {
            facts.push(distractor(rng));
        }
    }
    facts.shuffle(rng);
    let genre = f.genres[0].to_lowercase();
    let article = if genre.starts_with(['a', 'e', 'i', 'o', 'u']) { "an" } else { "a" };
    let mut sentences = vec![format!("{t} is {article} {genre} film.")];
    sentences.extend(facts);
    sentences.join(" ")
}

/// Abstracts for the given films separated by blank lines.
pub fn film_texts(world: &World, films: &[usize], coverage: f64, distractor_rate: f64, rng: &mut ChaCha8Rng) -> String {
    let docs: Vec<String> =
        films.iter().map(|&f| film_abstract(world, &world.films[f], coverage, distractor_rate, rng)).collect();
    let mut out = docs.join("\n\n");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn one_paragraph_per_film() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let w = World::synthesize(12, &mut rng);
        let films: Vec<usize> = (0..12).collect();
        let text = film_texts(&w, &films, 1.0, 0.0, &mut rng);
        let paras: Vec<&str> = text.trim_end().split("\n\n").collect();
        assert_eq!(paras.len(), 12);
        for (p, f) in paras.iter().zip(&w.films) {
            assert!(p.starts_with(&f.title));
            assert!(p.contains(&format!("{} was directed by", f.title)));
        }
    }

    #[test]
    fn star_lists() {
        assert_eq!(list(&["A"]), "A");
        assert_eq!(list(&["A", "B"]), "A and B");
        assert_eq!(list(&["A", "B", "C"]), "A, B and C");
    }
}
