//! Seeded generator of customer-support chat sessions and of generic
//! English prose, plus the dictionaries that go with them.
//!
//! Templates are written pre-tokenized (punctuation separated by spaces)
//! so a generated sentence is simply its whitespace split.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::lexicon::{AbbreviationDict, WordDict};

/// One chat session: sentences of tokens.
pub type Session = Vec<Vec<String>>;

pub(crate) const FIRST_NAMES: &[&str] = &[
    "Janice", "Michael", "Sarah", "David", "Linda", "Kevin", "Maria", "James", "Susan", "Robert", "Karen", "Daniel",
    "Emily", "Steven", "Nancy", "Brian", "Laura", "Peter",
];
pub(crate) const LAST_NAMES: &[&str] = &[
    "Cheung", "Jones", "Smith", "Garcia", "Miller", "Brown", "Wilson", "Taylor", "Nguyen", "Patel", "Lopez", "Clark",
    "Lewis", "Walker", "Young", "Harris", "Martin", "Turner",
];
const CITIES: &[&str] = &[
    "Glendale", "Phoenix", "Tucson", "Dallas", "Austin", "Houston", "Denver", "Seattle", "Portland", "Miami",
    "Orlando", "Atlanta", "Chicago", "Boston",
];
const STATES: &[&str] =
    &["Arizona", "Texas", "Colorado", "Washington", "Oregon", "Florida", "Georgia", "Illinois", "Ohio", "Nevada"];
const DAYS: &[&str] = &["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"];
const TITLES: &[&str] = &["Mr", "Mrs", "Ms"];
/// Brand names the word dictionary does not know.
pub(crate) const WITHHELD_BRANDS: &[&str] = &["Zentrix", "Novatek", "Alphacore", "Brightwave", "Omnilink"];
const KNOWN_BRANDS: &[&str] = &["Hewlett-Packard", "Samsung", "Sony", "Dell"];
/// Domain jargon the word dictionary does not know.
pub(crate) const WITHHELD_WORDS: &[&str] = &[
    "autopay",
    "backorder",
    "checkout",
    "login",
    "username",
    "voicemail",
    "wifi",
    "bluetooth",
    "signup",
    "touchscreen",
    "webcam",
    "reship",
];

const PRODUCTS: &[&str] = &[
    "laptop",
    "tablet",
    "printer",
    "monitor",
    "keyboard",
    "mouse",
    "speaker",
    "headset",
    "charger",
    "router",
    "camera",
    "phone",
    "television",
    "scanner",
    "battery",
    "cable",
    "adapter",
    "webcam",
];
const PARTS: &[&str] = &["screen", "battery", "power button", "speaker", "keyboard", "charger", "touchscreen", "fan"];
const DEFECTS: &[&str] = &["broken", "damaged", "cracked", "defective", "too slow", "not working", "missing parts"];
const COLORS: &[&str] = &["black", "white", "silver", "red", "blue"];
const COUNTS: &[&str] = &["two", "three", "four", "five", "seven", "ten"];
const WHEN: &[&str] = &["yesterday", "last week", "two days ago", "this morning", "last month"];

const CUSTOMER: &[&str] = &[
    "Hi , I need help with my order .",
    "Hello , I have a question about my account .",
    "I placed an order for a {product} {when} .",
    "The {product} I ordered has not arrived yet .",
    "My order number is {number} .",
    "Can you please check the status of my order ?",
    "I cannot login to my account .",
    "I forgot my username and password .",
    "The {part} on my {product} stopped working .",
    "I want to return the {product} because it is {defect} .",
    "Please send me a new {product} as soon as possible .",
    "I live in {city} , {state} .",
    "My name is {first} {last} .",
    "I tried to pay with autopay but the checkout page gave an error .",
    "The wifi keeps dropping on my {product} .",
    "The bluetooth will not connect to my phone .",
    "Is the {brand} {product} on backorder ?",
    "Thanks for your help .",
    "Thank you so much .",
    "Can I change the shipping address on my order ?",
    "I was charged twice for the same order .",
    "When will my refund be processed ?",
    "I did not receive a confirmation email .",
    "The webcam does not turn on .",
    "The touchscreen is not responding when I touch it .",
    "I got a voicemail about my order .",
    "I need to update the billing address on my account .",
    "What is the warranty on the {brand} {product} ?",
    "I bought the {color} {product} from your store .",
    "The package was left at the wrong address .",
    "Please cancel my order .",
    "I would like to speak to a manager .",
    "The {product} is still not working after the update .",
    "Can you tell me when it will be shipped ?",
    "I am sure that they sent the wrong {product} .",
    "Your website says the item is out of stock .",
    "I never got the signup email for my account .",
    "The price on the website was different from the price I paid .",
    "Do you have the {brand} {product} in {color} ?",
    "I have been waiting for {count} weeks .",
    "My {product} from {brand} keeps shutting down .",
    "I used the same password as before .",
    "That is not what I ordered .",
    "Please let me know what I should do .",
    "I think the charger is the problem .",
    "Can you send the invoice to my email ?",
    "I called {when} but nobody answered .",
    "The Hewlett-Packard printer will not print anything .",
    "I need the order before {day} .",
    "Ok , thanks for checking .",
];

const AGENT: &[&str] = &[
    "Hello , my name is {first} {last} .",
    "Thank you for contacting {brand} support .",
    "How can I help you today ?",
    "I am sorry to hear that .",
    "Let me check that for you .",
    "Could you please provide your order number ?",
    "I can see that your order was shipped on {day} .",
    "It should arrive within {count} business days .",
    "We will reship the {product} at no extra cost .",
    "Please try to restart the {product} and check again .",
    "I have processed a refund to your account .",
    "You will receive a confirmation email shortly .",
    "Is there anything else I can help you with ?",
    "Thank you for your patience .",
    "Please use the login page to reset your password .",
    "The item is on backorder and will ship next week .",
    "I am sure that they received your request .",
    "Your {product} is covered by the warranty .",
    "Have a great day , {title} {last} .",
    "Could you please confirm the billing address on the account ?",
    "I have updated the shipping address for you .",
    "Please turn the wifi off and on again .",
    "Make sure that bluetooth is enabled on your phone .",
    "I will send you a new username by email .",
    "Your refund will be processed within {count} days .",
    "The checkout page is working again now .",
    "You can set up autopay from your account page .",
    "I can see the order in our system .",
    "Please keep the {product} until the new one arrives .",
    "The tracking number was sent to your email .",
    "I understand that this is frustrating .",
    "We do have the {product} in {color} .",
    "Let me transfer you to a manager .",
    "I have cancelled the order for you .",
    "The webcam needs the latest update .",
    "Please hold the power button for ten seconds .",
    "The {brand} warranty covers the {part} for one year .",
    "Thank you for choosing {brand} .",
    "I left you a voicemail {when} .",
    "Please check your email for the signup link .",
    "The touchscreen can be replaced under the warranty .",
    "Is the address in {city} still correct ?",
    "Our store in {city} has the {product} in stock .",
    "What is the name on the account ?",
    "I will check with the shipping team .",
    "The order will be delivered by {day} .",
];

/// Everyday prose that never appears in the chats; it gives the general
/// collection counts for the look-alike words.
const GENERIC: &[&str] = &[
    "The {gnoun} was on the {gplace} .",
    "She wore a {gadj} hat to the party .",
    "He came from the {gplace} near the river .",
    "They filled out the form at the office .",
    "We walked along the road to the {gplace} .",
    "The old {gnoun} is older than the new one .",
    "A {gadj} {gnoun} stood by the border .",
    "The painter used a {gadj} brush .",
    "Put the {gnoun} on the table .",
    "The prince won a prize at the fair .",
    "They went to the farm to see the horse .",
    "The lumber was stacked in the yard .",
    "A statue stood in the middle of the park .",
    "She gave him a tissue .",
    "The stove in the kitchen was hot .",
    "He threw a stone into the lake .",
    "The {gnoun} made a strange odor .",
    "They rode the boat across the bay .",
    "The store closed at noon .",
    "My sister knew the answer .",
    "The weather was cold and wet .",
    "We heard a loud noise in the night .",
    "The cat sat on the mat .",
    "He wrote a note on the card .",
    "She put the cart in the barn .",
    "The field was full of corn .",
    "The coat was too big for him .",
    "A bird flew over the house .",
    "The team played in the rain .",
    "The child drew a picture of a tree .",
    "He lost his keys in the sand .",
    "The teacher read a story to the class .",
    "They had lunch by the pond .",
    "The bell rang at the end of the day .",
    "She likes to walk in the garden .",
    "The ship sailed to a distant port .",
    "The door was painted {gadj} .",
    "He bought a {gadj} {gnoun} at the market .",
    "The mouse ran under the bed .",
    "A fable is a short story .",
    "The chief gave a long speech .",
    "The crowd began to cheer .",
    "He felt weak after the long week .",
    "The queen wore a gold crown .",
    "She found a shell on the beach .",
    "The farmer sold his {gnoun} at the fair .",
    "The river flows into the sea .",
    "Then they went home .",
    "There was a light in the window .",
    "He said that the {gnoun} was lost .",
];

const GNOUNS: &[&str] = &[
    "horse", "table", "lamp", "basket", "wagon", "kettle", "blanket", "ladder", "barrel", "candle", "bottle", "jacket",
    "hammer", "bucket", "pillow",
];
const GPLACES: &[&str] = &["farm", "market", "church", "village", "hill", "lake", "forest", "bridge", "harbor", "mill"];
const GADJ: &[&str] = &["small", "heavy", "green", "bright", "dark", "quiet", "round", "wooden", "warm", "plain"];

/// Standard abbreviations known to the cleaner.
pub(crate) const ABBREVIATIONS: &[(&str, &str)] = &[
    ("pls", "please"),
    ("plz", "please"),
    ("thx", "thanks"),
    ("u", "you"),
    ("ur", "your"),
    ("acct", "account"),
    ("az", "Arizona"),
    ("tx", "Texas"),
    ("asap", "as soon as possible"),
    ("hp", "Hewlett-Packard"),
    ("pwd", "password"),
    ("msg", "message"),
    ("addr", "address"),
    ("pkg", "package"),
    ("mgr", "manager"),
    ("wk", "week"),
];

fn pick<'a, R: Rng>(rng: &mut R, items: &[&'a str]) -> &'a str {
    items.choose(rng).expect("non-empty list")
}

fn fill<R: Rng>(rng: &mut R, template: &str) -> Vec<String> {
    let mut out = Vec::new();
    for piece in template.split_whitespace() {
        let expanded = match piece {
            "{product}" => pick(rng, PRODUCTS).to_string(),
            "{part}" => pick(rng, PARTS).to_string(),
            "{defect}" => pick(rng, DEFECTS).to_string(),
            "{color}" => pick(rng, COLORS).to_string(),
            "{count}" => pick(rng, COUNTS).to_string(),
            "{when}" => pick(rng, WHEN).to_string(),
            "{city}" => pick(rng, CITIES).to_string(),
            "{state}" => pick(rng, STATES).to_string(),
            "{first}" => pick(rng, FIRST_NAMES).to_string(),
            "{last}" => pick(rng, LAST_NAMES).to_string(),
            "{title}" => pick(rng, TITLES).to_string(),
            "{day}" => pick(rng, DAYS).to_string(),
            "{number}" => rng.gen_range(10_000..100_000).to_string(),
            "{brand}" => {
                if rng.gen_bool(0.6) {
                    pick(rng, WITHHELD_BRANDS).to_string()
                } else {
                    pick(rng, KNOWN_BRANDS).to_string()
                }
            }
            "{gnoun}" => pick(rng, GNOUNS).to_string(),
            "{gplace}" => pick(rng, GPLACES).to_string(),
            "{gadj}" => pick(rng, GADJ).to_string(),
            other => other.to_string(),
        };
        out.extend(expanded.split_whitespace().map(str::to_string));
    }
    out
}

/// A chat session alternating agent and customer turns.
pub fn generate_session<R: Rng>(rng: &mut R) -> Session {
    let turns = rng.gen_range(8..=13);
    let mut session = vec![fill(rng, AGENT[0]), fill(rng, AGENT[2])];
    for k in 0..turns {
        let template = if k % 2 == 0 { pick(rng, CUSTOMER) } else { pick(rng, AGENT) };
        session.push(fill(rng, template));
    }
    session.push(fill(rng, AGENT[12]));
    session
}

pub fn generate_sessions<R: Rng>(rng: &mut R, count: usize) -> Vec<Session> {
    (0..count).map(|_| generate_session(rng)).collect()
}

/// A short document of everyday prose.
pub fn generate_generic_document<R: Rng>(rng: &mut R) -> Vec<Vec<String>> {
    let len = rng.gen_range(3..=6);
    (0..len)
        .map(|_| {
            let template = pick(rng, GENERIC);
            fill(rng, template)
        })
        .collect()
}

/// Every word any template can produce, with proper-noun flags. A word
/// spelled like a proper noun is only listed as the proper noun.
pub(crate) fn vocabulary() -> Vec<(String, bool)> {
    let proper = proper_nouns();
    let is_proper = |w: &str| proper.iter().any(|p| p.eq_ignore_ascii_case(w));
    let mut words: Vec<(String, bool)> = proper.iter().map(|p| (p.to_string(), true)).collect();
    for list in [CUSTOMER, AGENT, GENERIC, PRODUCTS, PARTS, DEFECTS, COLORS, COUNTS, WHEN, GNOUNS, GPLACES, GADJ] {
        for text in list {
            for w in text.split_whitespace() {
                if w.starts_with('{') || !w.chars().any(char::is_alphabetic) || is_proper(w) {
                    continue;
                }
                words.push((w.to_lowercase(), false));
            }
        }
    }
    words
}

/// Proper nouns that appear in the chats.
pub(crate) fn proper_nouns() -> Vec<&'static str> {
    let mut out = vec!["I"];
    for list in [FIRST_NAMES, LAST_NAMES, CITIES, STATES, DAYS, TITLES, WITHHELD_BRANDS, KNOWN_BRANDS] {
        out.extend_from_slice(list);
    }
    out
}

/// Common English words that are one or two edits from chat words, so
/// typos can land on real words.
const LOOKALIKES: &[&str] = &[
    "form",
    "fro",
    "hat",
    "than",
    "then",
    "them",
    "there",
    "their",
    "now",
    "note",
    "nor",
    "know",
    "no",
    "one",
    "won",
    "own",
    "odor",
    "older",
    "border",
    "cheek",
    "chick",
    "amount",
    "produce",
    "shopping",
    "hell",
    "held",
    "prone",
    "prince",
    "pride",
    "prize",
    "cart",
    "care",
    "cord",
    "hard",
    "time",
    "feed",
    "seed",
    "weed",
    "sent",
    "sand",
    "tend",
    "end",
    "mend",
    "news",
    "knew",
    "few",
    "pleas",
    "lease",
    "sorrow",
    "chance",
    "charm",
    "dry",
    "may",
    "say",
    "weak",
    "seek",
    "cast",
    "coat",
    "cot",
    "most",
    "lumber",
    "statue",
    "thinks",
    "thank",
    "serve",
    "tissue",
    "deceive",
    "conform",
    "scream",
    "green",
    "butter",
    "table",
    "able",
    "fable",
    "stone",
    "stove",
    "score",
    "beset",
    "rest",
    "upgrade",
    "filling",
    "willing",
    "shopped",
    "skipped",
    "bait",
    "want",
    "cure",
    "pure",
    "sore",
    "quest",
    "greet",
    "treat",
    "contract",
    "gain",
    "tray",
    "toy",
    "cry",
    "sneaker",
    "house",
    "moose",
    "painter",
    "pointer",
    "printed",
    "bay",
    "way",
    "hay",
    "lay",
    "pay",
    "bill",
    "fill",
    "will",
    "pill",
    "worm",
    "word",
    "work",
    "world",
    "were",
    "wear",
    "wire",
    "hire",
    "fire",
    "tire",
    "ore",
    "ode",
    "lode",
    "rode",
    "road",
    "boat",
    "goat",
    "moat",
    "meat",
    "seat",
    "beat",
    "heat",
    "neat",
    "feat",
    "sat",
    "mat",
    "cat",
    "bat",
    "rat",
    "fat",
    "vat",
    "pat",
    "chat",
    "shat",
    "what",
    "wheat",
    "whet",
    "wet",
    "yet",
    "get",
    "net",
    "pet",
    "set",
    "bet",
    "met",
    "let",
    "jet",
    "vet",
    "he",
    "she",
    "we",
    "me",
    "be",
    "see",
    "sea",
    "tea",
    "ten",
    "tan",
    "pan",
    "man",
    "men",
    "can",
    "con",
    "cane",
    "cone",
    "done",
    "gone",
    "bone",
    "tone",
    "zone",
    "lone",
    "none",
    "on",
    "in",
    "an",
    "at",
    "it",
    "is",
    "as",
    "us",
    "so",
    "to",
    "too",
    "two",
    "do",
    "go",
    "lo",
    "of",
    "off",
    "oft",
    "if",
    "or",
    "our",
    "out",
    "hour",
    "sour",
    "four",
    "pour",
    "tour",
    "yours",
    "you",
    "yea",
    "ye",
    "ski",
    "sky",
    "shy",
    "why",
    "who",
    "how",
    "hot",
    "hit",
    "hid",
    "his",
    "has",
    "had",
    "hut",
    "hug",
    "bug",
    "big",
    "bag",
    "beg",
    "leg",
    "log",
    "lag",
    "lug",
    "dug",
    "dog",
    "dig",
    "dot",
    "lot",
    "lit",
    "let",
    "lid",
    "lip",
    "tip",
    "top",
    "tap",
    "tab",
    "tub",
    "cub",
    "cup",
    "cap",
    "cop",
    "mop",
    "map",
    "nap",
    "pen",
    "pin",
    "pun",
    "bun",
    "sun",
    "son",
    "sin",
    "tin",
    "win",
    "fin",
    "fun",
    "fan",
    "van",
    "ban",
    "bin",
    "bed",
    "bad",
    "bud",
    "mud",
    "mad",
    "made",
    "wade",
    "fade",
    "jade",
    "lame",
    "game",
    "came",
    "name",
    "same",
    "tame",
    "fame",
    "dame",
    "date",
    "gate",
    "late",
    "mate",
    "rate",
    "fate",
    "hate",
    "kate",
    "plate",
    "state",
    "skate",
    "slate",
    "crate",
    "grate",
    "trade",
    "grade",
    "shade",
    "blade",
    "spade",
    "lake",
    "make",
    "take",
    "bake",
    "cake",
    "fake",
    "rake",
    "sake",
    "wake",
    "shake",
    "snake",
    "stake",
    "brake",
    "flake",
    "quake",
    "shipment",
    "ordered",
    "orders",
    "checked",
    "checks",
    "accounts",
    "emails",
    "shipped",
    "items",
    "prices",
    "priced",
    "helps",
    "helped",
    "needs",
    "needed",
    "sends",
    "phones",
    "cards",
    "numbers",
    "addresses",
];

/// The word dictionary: chat and prose vocabulary (minus the withheld
/// words) plus look-alikes. Frequencies are occurrence counts in `counts`
/// plus one.
pub fn build_word_dict(counts: &dyn Fn(&str) -> u64) -> WordDict {
    let mut dict = WordDict::new();
    let withheld = |w: &str| {
        WITHHELD_WORDS.contains(&w.to_lowercase().as_str()) || WITHHELD_BRANDS.iter().any(|b| b.eq_ignore_ascii_case(w))
    };
    let mut seen = std::collections::HashSet::new();
    let mut words = vocabulary();
    words.extend(LOOKALIKES.iter().map(|w| (w.to_string(), false)));
    for (w, proper) in words {
        if withheld(&w) || !seen.insert(w.to_lowercase()) {
            continue;
        }
        dict.insert(&w, counts(&w) + 1, proper);
    }
    dict
}

pub fn build_abbreviations() -> AbbreviationDict {
    let mut dict = AbbreviationDict::new();
    for (short, long) in ABBREVIATIONS {
        dict.insert(short, long);
    }
    dict
}
