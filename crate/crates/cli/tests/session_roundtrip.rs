use cmlab_cli::session::{ModuleBlock, OptionsBlock, RingBlock};
use cmlab_cli::{format_session, parse_session, SessionFile};
use proptest::prelude::*;

const VARS: [&str; 4] = ["x", "y", "z", "w"];

/// A homogeneous form of degree `deg`: one or two monomials with coefficients.
fn form(nvars: usize, deg: u32) -> impl Strategy<Value = String> {
    let mono = prop::collection::vec(0..nvars, deg as usize).prop_map(move |idx| {
        let mut exps = vec![0u32; nvars];
        for i in idx {
            exps[i] += 1;
        }
        let parts: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| if *e == 1 { VARS[i].to_string() } else { format!("{}^{e}", VARS[i]) })
            .collect();
        parts.join("*")
    });
    (prop::collection::vec((1u32..100, mono), 1..=2)).prop_map(|ts| {
        ts.into_iter().map(|(c, m)| if c == 1 { m } else { format!("{c}*{m}") }).collect::<Vec<_>>().join(" + ")
    })
}

fn module_block(nvars: usize, index: usize) -> impl Strategy<Value = ModuleBlock> {
    prop::collection::vec(0i32..2, 1..=3).prop_flat_map(move |gendeg| {
        let top = gendeg.iter().copied().max().unwrap_or(0);
        let row = {
            let gendeg = gendeg.clone();
            (1u32..3).prop_flat_map(move |extra| {
                let entries: Vec<BoxedStrategy<String>> = gendeg
                    .iter()
                    .map(|d| {
                        let deg = (top - d) as u32 + extra;
                        prop_oneof![1 => Just("0".to_string()), 3 => form(nvars, deg)].boxed()
                    })
                    .collect();
                entries
            })
        };
        let rows = prop::collection::vec(row, 0..3).prop_map(|rows| {
            rows.into_iter().filter(|r: &Vec<String>| r.iter().any(|e| e != "0")).collect::<Vec<_>>()
        });
        (Just(gendeg), rows).prop_map(move |(gendeg, relations)| ModuleBlock {
            name: format!("M{index}"),
            over: "S".into(),
            gendeg,
            relations,
        })
    })
}

fn session() -> impl Strategy<Value = SessionFile> {
    (1usize..=4).prop_flat_map(|nvars| {
        let ideal = prop::collection::vec((2u32..4).prop_flat_map(move |d| form(nvars, d)), 0..3);
        let modules = (0usize..3).prop_flat_map(move |count| {
            (0..count).map(|i| module_block(nvars, i)).collect::<Vec<_>>()
        });
        let options = (
            prop::option::of(any::<u64>()),
            prop::option::of(1usize..100_000),
            prop::option::of(1i32..60),
            prop::option::of(0usize..10),
            prop::option::of(0usize..12),
            prop::option::of(1usize..16),
        )
            .prop_map(|(seed, max_pairs, max_degree, jmax, nmax, bound)| OptionsBlock {
                seed,
                max_pairs,
                max_degree,
                jmax,
                nmax,
                bound,
            });
        (Just(nvars), ideal, modules, options, prop_oneof![Just(32003u32), Just(101u32), Just(7u32)])
    })
    .prop_map(|(nvars, ideal, modules, options, char)| SessionFile {
        ring: RingBlock { name: "S".into(), char, vars: VARS[..nvars].iter().map(|v| v.to_string()).collect(), ideal },
        modules,
        options,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn format_then_parse_is_identity(s in session()) {
        let text = format_session(&s);
        let back = parse_session(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(format_session(&back), text);
    }
}

#[test]
fn example_sessions_round_trip() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../sessions");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = parse_session(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(parse_session(&format_session(&parsed)).unwrap(), parsed);
        seen += 1;
    }
    assert!(seen >= 4);
}
