//! The synthetic movie world: films with their crew, cast and companies.

use std::collections::{BTreeSet, HashSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::names::{self, CITIES, COUNTRIES, GENRES, LANGUAGES, OCCUPATIONS};
use super::ontology_def::{onto, COMPANY, FILM, PERSON};
use crate::rdf::vocab::{self, RESOURCE_NS};
use crate::rdf::{iri, Graph, Iri, Literal, Triple};

#[derive(Debug, Clone)]
pub struct Film {
    pub iri: Iri,
    pub title: String,
    pub release_date: String,
    pub runtime: u32,
    pub budget: Option<u64>,
    pub gross: Option<u64>,
    pub country: &'static str,
    pub language: &'static str,
    pub genres: Vec<&'static str>,
    pub director: usize,
    pub producer: usize,
    pub writer: usize,
    pub composer: usize,
    pub cinematographer: usize,
    pub starring: Vec<usize>,
    pub studios: Vec<usize>,
    pub distributor: usize,
}

#[derive(Debug, Clone)]
pub struct Person {
    pub iri: Iri,
    pub name: String,
    pub birth_date: String,
    pub death_date: Option<String>,
    pub birth_place: &'static str,
    pub birth_name: Option<String>,
    pub occupation: &'static str,
}

#[derive(Debug, Clone)]
pub struct Company {
    pub iri: Iri,
    pub name: String,
    pub founding_date: String,
    pub headquarter: &'static str,
    pub revenue: u64,
}

#[derive(Debug, Clone)]
pub struct World {
    pub films: Vec<Film>,
    pub persons: Vec<Person>,
    pub companies: Vec<Company>,
}

fn date(rng: &mut ChaCha8Rng, years: std::ops::RangeInclusive<u32>) -> String {
    format!("{:04}-{:02}-{:02}", rng.random_range(years), rng.random_range(1..=12), rng.random_range(1..=28))
}

/// Whole-dollar amounts rendered the way JSON writes floats, e.g. `35000000.0`.
pub fn money(v: u64) -> String {
    format!("{v}.0")
}

/// Biased towards low indices so a minority of people work on many films.
fn skewed(rng: &mut ChaCha8Rng, n: usize) -> usize {
    let u: f64 = rng.random();
    ((u * u) * n as f64) as usize % n
}

fn draw_distinct(rng: &mut ChaCha8Rng, n: usize, taken: &mut Vec<usize>) -> usize {
    loop {
        let p = skewed(rng, n);
        if !taken.contains(&p) {
            taken.push(p);
            return p;
        }
    }
}

impl World {
    pub fn synthesize(n_films: usize, rng: &mut ChaCha8Rng) -> World {
        let mut used = HashSet::new();
        let n_persons = (n_films * 3).max(40);
        let n_companies = (n_films / 2).max(8);

        let mut films = Vec::with_capacity(n_films);
        let mut person_slots: Vec<Option<usize>> = vec![None; n_persons];
        let mut company_slots: Vec<Option<usize>> = vec![None; n_companies];
        let mut persons = Vec::new();
        let mut companies = Vec::new();
        let mut person_order = Vec::new();
        let mut company_order = Vec::new();

        for f in 0..n_films {
            let title = names::film_title(&mut used, rng);
            let mut crew = Vec::new();
            let mut roles: Vec<usize> = (0..5).map(|_| draw_distinct(rng, n_persons, &mut crew)).collect();
            let n_stars = rng.random_range(2..=4);
            let starring: Vec<usize> = (0..n_stars).map(|_| draw_distinct(rng, n_persons, &mut crew)).collect();
            let mut studios_taken = Vec::new();
            let n_studios = if rng.random_bool(0.25) { 2 } else { 1 };
            let studios: Vec<usize> =
                (0..n_studios).map(|_| draw_distinct(rng, n_companies, &mut studios_taken)).collect();
            let distributor = draw_distinct(rng, n_companies, &mut studios_taken);
            for p in roles.iter().chain(&starring) {
                if person_slots[*p].is_none() {
                    person_slots[*p] = Some(person_order.len());
                    person_order.push(*p);
                }
            }
            for c in studios.iter().chain(std::iter::once(&distributor)) {
                if company_slots[*c].is_none() {
                    company_slots[*c] = Some(company_order.len());
                    company_order.push(*c);
                }
            }
            let mut genres: Vec<&'static str> = vec![names::choose(rng, GENRES)];
            if rng.random_bool(0.3) {
                let g = names::choose(rng, GENRES);
                if !genres.contains(&g) {
                    genres.push(g);
                }
            }
            let budget = rng.random_bool(0.9).then(|| rng.random_range(5..=900) * 100_000);
            let gross = rng.random_bool(0.9).then(|| rng.random_range(1..=3000) * 100_000);
            let idx = |slot: &Option<usize>| slot.expect("registered above");
            let cinematographer = idx(&person_slots[roles.pop().unwrap()]);
            let composer = idx(&person_slots[roles.pop().unwrap()]);
            let writer = idx(&person_slots[roles.pop().unwrap()]);
            let producer = idx(&person_slots[roles.pop().unwrap()]);
            let director = idx(&person_slots[roles.pop().unwrap()]);
            films.push(Film {
                iri: iri(&format!("{RESOURCE_NS}film_{f:05}")),
                title,
                release_date: date(rng, 1950..=2020),
                runtime: rng.random_range(78..=185),
                budget,
                gross,
                country: names::choose(rng, COUNTRIES),
                language: names::choose(rng, LANGUAGES),
                genres,
                director,
                producer,
                writer,
                composer,
                cinematographer,
                starring: starring.iter().map(|p| idx(&person_slots[*p])).collect(),
                studios: studios.iter().map(|c| idx(&company_slots[*c])).collect(),
                distributor: idx(&company_slots[distributor]),
            });
        }

        for i in 0..person_order.len() {
            let name = names::person_name(&mut used, rng);
            let birth_year = rng.random_range(1900..=1990);
            let death_date = rng.random_bool(0.3).then(|| date(rng, (birth_year + 30)..=2023));
            let birth_name = rng.random_bool(0.4).then(|| {
                let (first, last) = name.rsplit_once(' ').expect("person names have two parts");
                format!("{first} {} {last}", names::choose(rng, &["Maria", "Johann", "Luis", "Anne", "Marie"]))
            });
            persons.push(Person {
                iri: iri(&format!("{RESOURCE_NS}person_{i:05}")),
                name,
                birth_date: date(rng, birth_year..=birth_year),
                death_date,
                birth_place: names::choose(rng, CITIES),
                birth_name,
                occupation: names::choose(rng, OCCUPATIONS),
            });
        }
        for i in 0..company_order.len() {
            companies.push(Company {
                iri: iri(&format!("{RESOURCE_NS}company_{i:05}")),
                name: names::company_name(&mut used, rng),
                founding_date: date(rng, 1900..=2010),
                headquarter: names::choose(rng, CITIES),
                revenue: rng.random_range(10..=50_000) * 100_000,
            });
        }
        let mut world = World { films, persons, companies };
        world.ensure_full_coverage();
        world
    }

    /// Optional facts are random; make sure each one still shows up somewhere
    /// so the reference graph exercises the whole schema.
    fn ensure_full_coverage(&mut self) {
        if let Some(f) = self.films.first_mut() {
            f.budget.get_or_insert(12_500_000);
            f.gross.get_or_insert(48_000_000);
            let director = f.director;
            let p = &mut self.persons[director];
            if p.death_date.is_none() {
                let year: u32 = p.birth_date[..4].parse().expect("generated date");
                p.death_date = Some(format!("{:04}-06-15", (year + 60).min(2023)));
            }
            if p.birth_name.is_none() {
                p.birth_name = Some(format!("{} Maria", p.name));
            }
        }
    }

    pub fn film_triples(&self, f: &Film, out: &mut Vec<Triple>) {
        let s = &f.iri;
        let lit = |v: &str| Literal::string(v);
        let typed = |v: String, dt: &str| Literal::typed(v, iri(dt));
        out.push(Triple::new(s.clone(), iri(vocab::RDF_TYPE), onto(FILM)));
        out.push(Triple::new(s.clone(), iri(vocab::RDFS_LABEL), lit(&f.title)));
        out.push(Triple::new(s.clone(), onto("releaseDate"), typed(f.release_date.clone(), vocab::XSD_DATE)));
        out.push(Triple::new(s.clone(), onto("runtime"), typed(f.runtime.to_string(), vocab::XSD_INTEGER)));
        if let Some(b) = f.budget {
            out.push(Triple::new(s.clone(), onto("budget"), typed(money(b), vocab::XSD_DOUBLE)));
        }
        if let Some(g) = f.gross {
            out.push(Triple::new(s.clone(), onto("gross"), typed(money(g), vocab::XSD_DOUBLE)));
        }
        out.push(Triple::new(s.clone(), onto("country"), lit(f.country)));
        out.push(Triple::new(s.clone(), onto("language"), lit(f.language)));
        for g in &f.genres {
            out.push(Triple::new(s.clone(), onto("genre"), lit(g)));
        }
        let person = |p: usize| self.persons[p].iri.clone();
        out.push(Triple::new(s.clone(), onto("director"), person(f.director)));
        out.push(Triple::new(s.clone(), onto("producer"), person(f.producer)));
        out.push(Triple::new(s.clone(), onto("writer"), person(f.writer)));
        out.push(Triple::new(s.clone(), onto("musicComposer"), person(f.composer)));
        out.push(Triple::new(s.clone(), onto("cinematography"), person(f.cinematographer)));
        for p in &f.starring {
            out.push(Triple::new(s.clone(), onto("starring"), person(*p)));
        }
        for c in &f.studios {
            out.push(Triple::new(s.clone(), onto("productionCompany"), self.companies[*c].iri.clone()));
        }
        out.push(Triple::new(s.clone(), onto("distributor"), self.companies[f.distributor].iri.clone()));
    }

    pub fn person_triples(&self, p: &Person, out: &mut Vec<Triple>) {
        let s = &p.iri;
        let date = |v: &str| Literal::typed(v, iri(vocab::XSD_DATE));
        out.push(Triple::new(s.clone(), iri(vocab::RDF_TYPE), onto(PERSON)));
        out.push(Triple::new(s.clone(), iri(vocab::RDFS_LABEL), Literal::string(&p.name)));
        out.push(Triple::new(s.clone(), onto("birthDate"), date(&p.birth_date)));
        if let Some(d) = &p.death_date {
            out.push(Triple::new(s.clone(), onto("deathDate"), date(d)));
        }
        out.push(Triple::new(s.clone(), onto("birthPlace"), Literal::string(p.birth_place)));
        if let Some(n) = &p.birth_name {
            out.push(Triple::new(s.clone(), onto("birthName"), Literal::string(n)));
        }
        out.push(Triple::new(s.clone(), onto("occupation"), Literal::string(p.occupation)));
    }

    pub fn company_triples(&self, c: &Company, out: &mut Vec<Triple>) {
        let s = &c.iri;
        out.push(Triple::new(s.clone(), iri(vocab::RDF_TYPE), onto(COMPANY)));
        out.push(Triple::new(s.clone(), iri(vocab::RDFS_LABEL), Literal::string(&c.name)));
        out.push(Triple::new(s.clone(), onto("foundingDate"), Literal::typed(&c.founding_date, iri(vocab::XSD_DATE))));
        out.push(Triple::new(s.clone(), onto("headquarter"), Literal::string(c.headquarter)));
        out.push(Triple::new(s.clone(), onto("revenue"), Literal::typed(money(c.revenue), iri(vocab::XSD_DOUBLE))));
    }

    /// Persons and companies referenced by the given films.
    pub fn related(&self, films: &[usize]) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let mut persons = BTreeSet::new();
        let mut companies = BTreeSet::new();
        for &f in films {
            let film = &self.films[f];
            persons.extend([film.director, film.producer, film.writer, film.composer, film.cinematographer]);
            persons.extend(film.starring.iter().copied());
            companies.extend(film.studios.iter().copied());
            companies.insert(film.distributor);
        }
        (persons, companies)
    }

    /// The given films plus a one-hop closure over their people and companies.
    pub fn subgraph(&self, films: &[usize]) -> Graph {
        let mut triples = Vec::new();
        for &f in films {
            self.film_triples(&self.films[f], &mut triples);
        }
        let (persons, companies) = self.related(films);
        for p in persons {
            self.person_triples(&self.persons[p], &mut triples);
        }
        for c in companies {
            self.company_triples(&self.companies[c], &mut triples);
        }
        triples.into_iter().collect()
    }

    pub fn reference(&self) -> Graph {
        let all: Vec<usize> = (0..self.films.len()).collect();
        self.subgraph(&all)
    }
}
