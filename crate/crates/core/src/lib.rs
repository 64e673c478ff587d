pub mod algebra;
pub mod group;
pub mod shiftspace;
pub mod automaton;
pub mod analysis;
pub mod examples;
pub mod instance;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/fields-and-subspaces.md")]
    pub struct FieldsAndSubspaces;
    #[doc = include_str!("../../../book/src/groups-and-tilings.md")]
    pub struct GroupsAndTilings;
    #[doc = include_str!("../../../book/src/subshifts-and-projections.md")]
    pub struct SubshiftsAndProjections;
    #[doc = include_str!("../../../book/src/automata.md")]
    pub struct Automata;
    #[doc = include_str!("../../../book/src/verdicts.md")]
    pub struct Verdicts;
    #[doc = include_str!("../../../book/src/examples.md")]
    pub struct Examples;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub struct ReadmeDoctests;
