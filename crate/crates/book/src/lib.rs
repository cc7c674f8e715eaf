//! The guide under `book/src`, compiled as rustdoc so that every listing in
//! it runs under `cargo test`. One module per chapter keeps failures
//! traceable to their page.

macro_rules! chapters {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub mod $name {}
        )*
    };
}

chapters! {
    introduction => "introduction.md",
    circuits => "circuits.md",
    toffoli => "toffoli.md",
    adder => "adder.md",
    multiplier => "multiplier.md",
    garbage => "garbage.md",
    simulation => "simulation.md",
    resources => "resources.md",
    cli => "cli.md",
}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
