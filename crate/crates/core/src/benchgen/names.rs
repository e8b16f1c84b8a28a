//! Word lists and unique-name generators. Names never contain periods so
//! that a naive sentence splitter keeps them intact.

use std::collections::HashSet;

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const ADJECTIVES: &[&str] = &[
    "Silent",
    "Crimson",
    "Hidden",
    "Broken",
    "Golden",
    "Distant",
    "Burning",
    "Frozen",
    "Silver",
    "Hollow",
    "Wild",
    "Last",
    "Lost",
    "Quiet",
    "Endless",
    "Bitter",
    "Pale",
    "Scarlet",
    "Restless",
    "Forgotten",
    "Northern",
    "Savage",
    "Midnight",
    "Shattered",
    "Velvet",
    "Electric",
    "Iron",
    "Crooked",
    "Gentle",
    "Falling",
    "Rising",
    "Secret",
    "Wandering",
    "Painted",
    "Sunken",
    "Stolen",
    "Violet",
    "Emerald",
    "Lonely",
    "Fading",
    "Winter",
    "Summer",
    "Ancient",
    "Blind",
    "Brave",
    "Cold",
    "Dark",
    "Empty",
    "Final",
];

const NOUNS: &[&str] = &[
    "River",
    "Harbor",
    "Mountain",
    "Garden",
    "Mirror",
    "Shadow",
    "Empire",
    "Horizon",
    "Kingdom",
    "Letter",
    "Island",
    "Station",
    "Forest",
    "Voyage",
    "Promise",
    "Tower",
    "Witness",
    "Echo",
    "Bridge",
    "Storm",
    "Desert",
    "Orchard",
    "Lantern",
    "Compass",
    "Frontier",
    "Season",
    "Anthem",
    "Cathedral",
    "Carnival",
    "Harvest",
    "Lighthouse",
    "Labyrinth",
    "Meadow",
    "Monsoon",
    "Passage",
    "Requiem",
    "Signal",
    "Summit",
    "Tide",
    "Valley",
    "Window",
    "Crown",
    "Dream",
    "Engine",
    "Fortune",
    "Glacier",
    "Heart",
    "Journey",
    "Legacy",
    "Melody",
    "Night",
    "Ocean",
    "Prophet",
    "Quarry",
    "Riddle",
    "Sparrow",
    "Thunder",
    "Umbrella",
    "Voice",
    "Wolf",
];

const FIRST_NAMES: &[&str] = &[
    "Anna", "Bruno", "Clara", "David", "Elena", "Felix", "Greta", "Hugo", "Irene", "Jonas", "Karin", "Leon", "Maria",
    "Nico", "Olga", "Paul", "Rosa", "Simon", "Tessa", "Victor", "Wanda", "Yusuf", "Zoe", "Adrian", "Beatrice",
    "Carlos", "Diana", "Emil", "Fiona", "Gustav", "Helena", "Ivan", "Julia", "Kofi", "Lena", "Marco", "Nadia", "Oscar",
    "Petra", "Quentin", "Rita", "Stefan", "Tomas", "Ursula", "Vera", "Walter", "Xenia", "Yara", "Amir", "Bianca",
    "Cyrus", "Dalia", "Elias", "Farah", "Gideon", "Hana", "Igor", "Jasmin", "Kenji", "Lucia", "Milan", "Nora", "Omar",
    "Priya", "Rafael", "Sofia", "Tariq", "Uma", "Vincent", "Wilma", "Arturo", "Bettina", "Cosimo", "Dora", "Enzo",
    "Flora", "Gareth", "Hilde", "Ingrid", "Jakob",
];

const LAST_NAMES: &[&str] = &[
    "Lee",
    "Novak",
    "Moreau",
    "Fischer",
    "Rossi",
    "Kowalski",
    "Silva",
    "Jensen",
    "Horvat",
    "Berg",
    "Costa",
    "Dubois",
    "Engel",
    "Ferrari",
    "Garcia",
    "Hansen",
    "Ivanova",
    "Janssen",
    "Keller",
    "Lambert",
    "Meyer",
    "Nielsen",
    "Okafor",
    "Petrov",
    "Quinn",
    "Romano",
    "Schulz",
    "Tanaka",
    "Ueda",
    "Vargas",
    "Weber",
    "Yilmaz",
    "Zimmer",
    "Almeida",
    "Brandt",
    "Castillo",
    "Delgado",
    "Eriksen",
    "Fontaine",
    "Gallo",
    "Hoffmann",
    "Ibsen",
    "Jovanovic",
    "Kraus",
    "Lindqvist",
    "Marin",
    "Nakamura",
    "Olsen",
    "Pereira",
    "Reyes",
    "Sato",
    "Torres",
    "Urban",
    "Varga",
    "Wagner",
    "Xu",
    "Young",
    "Zeller",
    "Abbott",
    "Bauer",
    "Carter",
    "Duarte",
    "Ellis",
    "Foster",
    "Grant",
    "Hughes",
    "Iversen",
    "Jordan",
    "Kline",
    "Lowe",
    "Mendes",
    "Nash",
    "Ortiz",
    "Pryce",
    "Ramos",
    "Stone",
    "Thorne",
    "Vance",
    "Walsh",
    "Ward",
];

const COMPANY_WORDS: &[&str] = &[
    "Silver Lake",
    "Red Oak",
    "Blue Harbor",
    "North Star",
    "Iron Gate",
    "Golden Arc",
    "Stone Bridge",
    "Bright Field",
    "Cedar",
    "Falcon",
    "Meridian",
    "Pinnacle",
    "Lighthouse",
    "Aurora",
    "Summit",
    "Crescent",
    "Beacon",
    "Harbor Light",
    "Evergreen",
    "Redwood",
    "Sapphire",
    "Orchid",
    "Paragon",
    "Vanguard",
    "Horizon Line",
    "Atlas",
    "Phoenix",
    "Monarch",
    "Juniper",
    "Kestrel",
    "Marble Arch",
    "Nimbus",
    "Obsidian",
    "Polaris",
    "Quarry Hill",
    "Riverside",
];

const COMPANY_SUFFIXES: &[&str] =
    &["Pictures", "Films", "Studios", "Entertainment", "Media", "Productions", "Releasing", "Distribution", "Cinema"];

pub const GENRES: &[&str] =
    &["Drama", "Comedy", "Thriller", "War", "Romance", "Western", "Horror", "Musical", "Mystery", "Adventure"];
pub const COUNTRIES: &[&str] =
    &["France", "Germany", "Italy", "Japan", "Spain", "Sweden", "Brazil", "Canada", "Poland"];
pub const LANGUAGES: &[&str] =
    &["French", "German", "Italian", "Japanese", "Spanish", "Swedish", "Portuguese", "English", "Polish"];
pub const CITIES: &[&str] = &[
    "Berlin",
    "Lyon",
    "Milan",
    "Osaka",
    "Seville",
    "Gothenburg",
    "Recife",
    "Toronto",
    "Krakow",
    "Vienna",
    "Porto",
    "Dublin",
    "Prague",
    "Chicago",
    "Melbourne",
    "Cairo",
];
pub const OCCUPATIONS: &[&str] =
    &["Actor", "Film director", "Screenwriter", "Producer", "Composer", "Cinematographer", "Editor", "Musician"];

const ROMAN: &[&str] = &["II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X"];

/// Draws names from a generator closure until one is unused; after a few
/// collisions a numeric suffix guarantees termination.
fn unique(used: &mut HashSet<String>, rng: &mut ChaCha8Rng, draw: impl Fn(&mut ChaCha8Rng) -> String) -> String {
    for _ in 0..8 {
        let name = draw(rng);
        if used.insert(name.clone()) {
            return name;
        }
    }
    let base = draw(rng);
    for suffix in ROMAN.iter().map(|s| s.to_string()).chain((11..).map(|n| n.to_string())) {
        let name = format!("{base} {suffix}");
        if used.insert(name.clone()) {
            return name;
        }
    }
    unreachable!("suffix iterator is infinite")
}

fn pick<'a>(rng: &mut ChaCha8Rng, words: &'a [&'a str]) -> &'a str {
    words.choose(rng).expect("word lists are non-empty")
}

pub fn film_title(used: &mut HashSet<String>, rng: &mut ChaCha8Rng) -> String {
    unique(used, rng, |rng| match rng.random_range(0..4) {
        0 => format!("The {} {}", pick(rng, ADJECTIVES), pick(rng, NOUNS)),
        1 => format!("{} {}", pick(rng, ADJECTIVES), pick(rng, NOUNS)),
        2 => format!("{} of the {}", pick(rng, NOUNS), pick(rng, NOUNS)),
        _ => format!("The {} and the {}", pick(rng, NOUNS), pick(rng, NOUNS)),
    })
}

pub fn person_name(used: &mut HashSet<String>, rng: &mut ChaCha8Rng) -> String {
    unique(used, rng, |rng| {
        if rng.random_bool(0.8) {
            format!("{} {}", pick(rng, FIRST_NAMES), pick(rng, LAST_NAMES))
        } else {
            format!("{} {} {}", pick(rng, FIRST_NAMES), pick(rng, FIRST_NAMES), pick(rng, LAST_NAMES))
        }
    })
}

pub fn company_name(used: &mut HashSet<String>, rng: &mut ChaCha8Rng) -> String {
    unique(used, rng, |rng| format!("{} {}", pick(rng, COMPANY_WORDS), pick(rng, COMPANY_SUFFIXES)))
}

pub fn choose<'a>(rng: &mut ChaCha8Rng, words: &'a [&'a str]) -> &'a str {
    pick(rng, words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn names_unique_and_period_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut used = HashSet::new();
        let mut all = Vec::new();
        for _ in 0..3000 {
            all.push(film_title(&mut used, &mut rng));
            all.push(person_name(&mut used, &mut rng));
        }
        for _ in 0..500 {
            all.push(company_name(&mut used, &mut rng));
        }
        let distinct: HashSet<&String> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        assert!(all.iter().all(|n| !n.contains('.')));
    }
}
