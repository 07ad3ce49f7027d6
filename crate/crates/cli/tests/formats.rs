use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trienv::envelope::GeneratorSet;
use trienv::homotopy::{Complex, Context, HomotopyError};
use trienv::Ring;
use trienv_cli::document::parse_document;
use trienv_cli::serialize::{
    certificate_from_doc, homotopy_from_doc, map_from_doc, named_complexes, parse_complex,
    parse_entry, render_certificate, render_complex, render_homotopy, render_map, FormatError,
};
use trienv_cli::{parse_category_manifest, Category};

fn context(manifest: &str) -> Category {
    parse_category_manifest(manifest).unwrap()
}

const F2: &str = "[category]\nmode = field\np = 2\n[algebra]\ndim = 1\n";
const F3: &str = "[category]\nmode = field\np = 3\n[algebra]\ndim = 1\n";
const DUAL: &str = "[category]\nmode = field\np = 2\n[quiver]\nvertices = 1\narrow x = 0 -> 0\nrelation = x.x\nbound = 1\n";
const INT: &str = "[category]\nmode = integer\n";

#[test]
fn complex_file_examples() {
    let Category::Integer(z) = context(INT) else {
        unreachable!()
    };
    assert!(parse_complex(&z, "").unwrap().is_zero_object());
    assert!(parse_complex(&z, "# nothing here\n\n")
        .unwrap()
        .is_zero_object());
    let c2 = parse_complex(
        &z,
        "[complex]\nrank 0 = 1\nrank 1 = 1\n[differential 0]\n[2]\n",
    )
    .unwrap();
    assert_eq!(c2, z.two_term(0, z.scalar_map(&[vec![2]])).unwrap());

    let Category::Field(k) = context(F2) else {
        unreachable!()
    };
    let text = "[complex]\nrank 0 = 1\nrank 1 = 1\nrank 2 = 1\n[differential 0]\n[1]\n[differential 1]\n[1]\n";
    match parse_complex(&k, text) {
        Err(FormatError::Invalid { error, .. }) => {
            assert_eq!(error, HomotopyError::DSquaredNonzero { degree: 0 })
        }
        other => panic!("expected d∘d failure, got {other:?}"),
    }
    assert!(matches!(
        parse_complex(&k, "rank 0 = 1\n"),
        Err(FormatError::Parse(_))
    ));
    assert!(matches!(
        parse_complex(
            &k,
            "[complex]\nrank 0 = 1\nrank 1 = 1\n[differential 0]\n[3]\n"
        ),
        Err(FormatError::Parse(_))
    ));
}

#[test]
fn entries_accept_tuples_and_scalars() {
    let Category::Field(a) = context(DUAL) else {
        unreachable!()
    };
    assert_eq!(parse_entry(&a, 1, "(0, 1)").unwrap(), vec![0, 1]);
    assert_eq!(parse_entry(&a, 1, "1").unwrap(), vec![1, 0]);
    assert!(parse_entry(&a, 1, "(1, 0, 0)").is_err());
}

fn round_trip_complexes<R: Ring>(ctx: &Context<R>, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..30 {
        let x = ctx.random_small_complex(&mut rng, -1, 3, 5);
        let text = render_complex(ctx, None, &x);
        assert_eq!(parse_complex(ctx, &text).unwrap(), x, "{text}");
    }
}

#[test]
fn complexes_round_trip() {
    for manifest in [F2, F3, DUAL, INT] {
        match context(manifest) {
            Category::Field(k) => round_trip_complexes(&k, 1),
            Category::Integer(z) => round_trip_complexes(&z, 2),
        }
    }
}

fn round_trip_maps<R: Ring>(ctx: &Context<R>, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let x = Arc::new(ctx.random_small_complex(&mut rng, -1, 3, 4));
        let y = Arc::new(ctx.random_small_complex(&mut rng, -1, 3, 4));
        let f = ctx.random_chain_map(&mut rng, &x, &y);
        let h = ctx.random_homotopy(&mut rng, &x, &y);
        let text = [
            render_complex(ctx, Some("x"), &x),
            render_complex(ctx, Some("y"), &y),
            render_map(ctx, "f", "x", "y", &f),
            render_homotopy(ctx, "h", "x", "y", &h),
        ]
        .join("\n");
        let doc = parse_document(&text).unwrap();
        let objects: BTreeMap<String, Arc<Complex<R::Elem>>> = named_complexes(ctx, &doc).unwrap();
        assert_eq!(map_from_doc(ctx, &doc, "f", &objects).unwrap(), f);
        assert_eq!(homotopy_from_doc(ctx, &doc, "h", &objects).unwrap(), h);
    }
}

#[test]
fn maps_and_homotopies_round_trip() {
    for manifest in [F3, DUAL, INT] {
        match context(manifest) {
            Category::Field(k) => round_trip_maps(&k, 3),
            Category::Integer(z) => round_trip_maps(&z, 4),
        }
    }
}

#[test]
fn broken_maps_are_invalid_not_unparseable() {
    let Category::Integer(z) = context(INT) else {
        unreachable!()
    };
    let text = "[complex x]\nrank 0 = 1\nrank 1 = 1\n[differential x 0]\n[2]\n\n[map f]\nsource = x\ntarget = x\n[component f 0]\n[1]\n[component f 1]\n[3]\n";
    let doc = parse_document(text).unwrap();
    let objects = named_complexes(&z, &doc).unwrap();
    assert!(matches!(
        map_from_doc(&z, &doc, "f", &objects),
        Err(FormatError::Invalid { .. })
    ));
}

#[test]
fn certificates_round_trip() {
    let Category::Integer(z) = context(INT) else {
        unreachable!()
    };
    let c = |m: i64| Arc::new(z.two_term(0, z.scalar_map(&[vec![m]])).unwrap());
    for (d, y) in [(vec![2], 4), (vec![2, 3], 6), (vec![2], 8)] {
        let g = GeneratorSet::new(d.iter().map(|&m| c(m)).collect());
        let r = z.check_membership(&g, &c(y), 6);
        let cert = r.certificate().unwrap();
        let text = render_certificate(&z, g.elements(), cert);
        let parsed = certificate_from_doc(&z, &parse_document(&text).unwrap()).unwrap();
        assert_eq!(&parsed.certificate, cert);
        assert_eq!(parsed.generators, g.elements());
        assert_eq!(
            render_certificate(&z, &parsed.generators, &parsed.certificate),
            text
        );
    }
    let g = GeneratorSet::new(vec![c(2)]);
    let r = trienv::localize::check_membership_local(&z, &g, &c(6), 5, 6);
    let cert = r.certificate().unwrap();
    let text = render_certificate(&z, g.elements(), cert);
    let parsed = certificate_from_doc(&z, &parse_document(&text).unwrap()).unwrap();
    assert_eq!(parsed.certificate.scale, BigInt::from(6));
    assert_eq!(&parsed.certificate, cert);

    let Category::Field(a) = context(DUAL) else {
        unreachable!()
    };
    let a0 = Arc::new(a.free_in_degree(1, 0));
    let a1 = Arc::new(a.free_in_degree(1, 1));
    let x = a.element_map(&[vec![vec![0, 1]]]);
    let p = Arc::new(a.two_term(0, x).unwrap());
    let g = GeneratorSet::new(vec![a0, a1]);
    let r = a.check_membership(&g, &p, 6);
    let cert = r.certificate().unwrap();
    let text = render_certificate(&a, g.elements(), cert);
    let parsed = certificate_from_doc(&a, &parse_document(&text).unwrap()).unwrap();
    assert_eq!(&parsed.certificate, cert);
}
