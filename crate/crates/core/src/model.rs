//! Scenario configurations, their six-node graphs, and the atomic attribute
//! encoding shared by the filters, the concept analysis and trajectories.
//!
//! A scenario is fully determined by four choices: which internal nodes the
//! input enters, how the two internal nodes are connected, which internal
//! nodes produce output, and which external shortcuts sit on top of the
//! mandatory `O -> F -> E -> I` backbone. [`Scenario`] is that canonical key;
//! labels such as `S7` are kept alongside it by catalogs, never inside it.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the two nodes of the internal cluster.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum InternalNode {
    /// Processes: active cognitive operations.
    P,
    /// Structures: stable knowledge representations.
    S,
}

impl InternalNode {
    pub const ALL: [InternalNode; 2] = [InternalNode::P, InternalNode::S];

    pub fn node(self) -> Node {
        match self {
            InternalNode::P => Node::P,
            InternalNode::S => Node::S,
        }
    }
}

/// One of the four nodes of the external learning loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExternalNode {
    O,
    F,
    E,
    I,
}

impl ExternalNode {
    pub const ALL: [ExternalNode; 4] = [ExternalNode::O, ExternalNode::F, ExternalNode::E, ExternalNode::I];

    pub fn node(self) -> Node {
        match self {
            ExternalNode::O => Node::O,
            ExternalNode::F => Node::F,
            ExternalNode::E => Node::E,
            ExternalNode::I => Node::I,
        }
    }
}

/// Any of the six nodes of a scenario graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Node {
    I,
    P,
    S,
    O,
    F,
    E,
}

impl Node {
    pub const ALL: [Node; 6] = [Node::I, Node::P, Node::S, Node::O, Node::F, Node::E];

    pub fn symbol(self) -> char {
        match self {
            Node::I => 'I',
            Node::P => 'P',
            Node::S => 'S',
            Node::O => 'O',
            Node::F => 'F',
            Node::E => 'E',
        }
    }

    pub fn from_symbol(c: char) -> Option<Node> {
        Some(match c {
            'I' => Node::I,
            'P' => Node::P,
            'S' => Node::S,
            'O' => Node::O,
            'F' => Node::F,
            'E' => Node::E,
            _ => return None,
        })
    }

    pub fn internal(self) -> Option<InternalNode> {
        match self {
            Node::P => Some(InternalNode::P),
            Node::S => Some(InternalNode::S),
            _ => None,
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// How Processes and Structures are connected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InternalArrangement {
    /// `P -> S`: monitoring only.
    BottomUp,
    /// `S -> P`: control only.
    TopDown,
    /// `P <-> S`: monitoring and control.
    Bidirectional,
}

impl InternalArrangement {
    pub const ALL: [InternalArrangement; 3] = [
        InternalArrangement::BottomUp,
        InternalArrangement::TopDown,
        InternalArrangement::Bidirectional,
    ];

    pub fn has_monitoring(self) -> bool {
        matches!(self, InternalArrangement::BottomUp | InternalArrangement::Bidirectional)
    }

    pub fn has_control(self) -> bool {
        matches!(self, InternalArrangement::TopDown | InternalArrangement::Bidirectional)
    }

    /// Internal edges contributed by this arrangement.
    pub fn edges(self) -> Vec<(InternalNode, InternalNode)> {
        let mut out = Vec::with_capacity(2);
        if self.has_monitoring() {
            out.push((InternalNode::P, InternalNode::S));
        }
        if self.has_control() {
            out.push((InternalNode::S, InternalNode::P));
        }
        out
    }

    pub fn name(self) -> &'static str {
        match self {
            InternalArrangement::BottomUp => "bottom-up",
            InternalArrangement::TopDown => "top-down",
            InternalArrangement::Bidirectional => "bidirectional",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        let lowered = name.to_ascii_lowercase().replace(['_', ' '], "-");
        match lowered.as_str() {
            "bottom-up" | "bottomup" => Some(InternalArrangement::BottomUp),
            "top-down" | "topdown" => Some(InternalArrangement::TopDown),
            "bidirectional" => Some(InternalArrangement::Bidirectional),
            _ => None,
        }
    }
}

impl fmt::Display for InternalArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A nonempty subset of `{P, S}`. Used for both the entry and the exit
/// pattern; the empty set is unrepresentable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodePattern {
    P,
    S,
    Both,
}

/// Internal nodes that receive input.
pub type EntryPattern = NodePattern;
/// Internal nodes that produce output.
pub type ExitPattern = NodePattern;

// A pattern always names at least one node.
#[allow(clippy::len_without_is_empty)]
impl NodePattern {
    pub const ALL: [NodePattern; 3] = [NodePattern::P, NodePattern::S, NodePattern::Both];

    pub fn contains(self, node: InternalNode) -> bool {
        match self {
            NodePattern::P => node == InternalNode::P,
            NodePattern::S => node == InternalNode::S,
            NodePattern::Both => true,
        }
    }

    pub fn members(self) -> Vec<InternalNode> {
        InternalNode::ALL.into_iter().filter(|n| self.contains(*n)).collect()
    }

    pub fn len(self) -> usize {
        match self {
            NodePattern::Both => 2,
            _ => 1,
        }
    }

    /// Builds a pattern from membership flags; `None` when both are false.
    pub fn from_flags(p: bool, s: bool) -> Option<Self> {
        match (p, s) {
            (true, true) => Some(NodePattern::Both),
            (true, false) => Some(NodePattern::P),
            (false, true) => Some(NodePattern::S),
            (false, false) => None,
        }
    }

    pub fn from_members<I: IntoIterator<Item = InternalNode>>(members: I) -> Option<Self> {
        let (mut p, mut s) = (false, false);
        for m in members {
            match m {
                InternalNode::P => p = true,
                InternalNode::S => s = true,
            }
        }
        Self::from_flags(p, s)
    }
}

impl Serialize for NodePattern {
    fn serialize<Ser: serde::Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        self.members().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NodePattern {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let members = Vec::<InternalNode>::deserialize(deserializer)?;
        NodePattern::from_members(members)
            .ok_or_else(|| serde::de::Error::custom("node pattern must name at least one of P, S"))
    }
}

/// An optional external edge bypassing part of the backbone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Shortcut {
    /// `O -> E`: direct environmental influence.
    OE,
    /// `O -> I`: self-monitoring.
    OI,
    /// `F -> I`: direct feedback incorporation.
    FI,
}

impl Shortcut {
    pub const ALL: [Shortcut; 3] = [Shortcut::OE, Shortcut::OI, Shortcut::FI];

    pub fn edge(self) -> (Node, Node) {
        match self {
            Shortcut::OE => (Node::O, Node::E),
            Shortcut::OI => (Node::O, Node::I),
            Shortcut::FI => (Node::F, Node::I),
        }
    }

    pub fn from_edge(from: Node, to: Node) -> Option<Self> {
        Shortcut::ALL.into_iter().find(|s| s.edge() == (from, to))
    }

    fn bit(self) -> u8 {
        match self {
            Shortcut::OE => 0b001,
            Shortcut::OI => 0b010,
            Shortcut::FI => 0b100,
        }
    }
}

/// A subset of the three shortcuts. Bijective with topology ids 1..=8, see
/// [`crate::notation::topology_id`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ShortcutSet(u8);

impl ShortcutSet {
    pub const EMPTY: ShortcutSet = ShortcutSet(0);
    pub const FULL: ShortcutSet = ShortcutSet(0b111);

    pub fn new<I: IntoIterator<Item = Shortcut>>(items: I) -> Self {
        items.into_iter().fold(Self::EMPTY, |acc, s| acc.with(s))
    }

    pub fn with(self, s: Shortcut) -> Self {
        ShortcutSet(self.0 | s.bit())
    }

    pub fn contains(self, s: Shortcut) -> bool {
        self.0 & s.bit() != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members in the fixed order `OE, OI, FI`.
    pub fn iter(self) -> impl Iterator<Item = Shortcut> {
        Shortcut::ALL.into_iter().filter(move |s| self.contains(*s))
    }
}

impl fmt::Debug for ShortcutSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ShortcutSet {
    fn serialize<Ser: serde::Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        self.iter().collect::<Vec<_>>().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ShortcutSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(ShortcutSet::new(Vec::<Shortcut>::deserialize(deserializer)?))
    }
}

/// The canonical configuration of a learning episode. Two scenarios are the
/// same configuration iff all four fields agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Scenario {
    pub entry: EntryPattern,
    pub internal: InternalArrangement,
    pub exit: ExitPattern,
    pub shortcuts: ShortcutSet,
}

impl Scenario {
    pub fn new(entry: EntryPattern, internal: InternalArrangement, exit: ExitPattern, shortcuts: ShortcutSet) -> Self {
        Scenario { entry, internal, exit, shortcuts }
    }

    pub fn graph(&self) -> ScenarioGraph {
        build_graph(self)
    }

    pub fn attributes(&self) -> AttributeVector {
        attributes_of(self)
    }
}

/// The six-node directed graph of a scenario.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioGraph {
    edges: BTreeSet<(Node, Node)>,
}

/// Backbone edges present in every scenario.
pub const BACKBONE: [(Node, Node); 3] = [(Node::O, Node::F), (Node::F, Node::E), (Node::E, Node::I)];

impl ScenarioGraph {
    pub fn edges(&self) -> &BTreeSet<(Node, Node)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, from: Node, to: Node) -> bool {
        self.edges.contains(&(from, to))
    }

    /// Nodes reachable from `from` (including `from`) using only edges
    /// accepted by `keep`.
    pub fn reachable_by(&self, from: Node, keep: impl Fn(Node, Node) -> bool) -> BTreeSet<Node> {
        let mut seen = from.bit();
        let mut stack = vec![from];
        while let Some(n) = stack.pop() {
            for &(a, b) in &self.edges {
                if a == n && seen & b.bit() == 0 && keep(a, b) {
                    seen |= b.bit();
                    stack.push(b);
                }
            }
        }
        Node::ALL.into_iter().filter(|n| seen & n.bit() != 0).collect()
    }

    pub fn reachable(&self, from: Node) -> BTreeSet<Node> {
        self.reachable_by(from, |_, _| true)
    }

    /// Edges that touch the internal cluster: entry, internal and exit edges.
    pub fn is_cluster_edge(from: Node, to: Node) -> bool {
        from.internal().is_some() || to.internal().is_some()
    }
}

pub fn build_graph(s: &Scenario) -> ScenarioGraph {
    let mut edges: BTreeSet<(Node, Node)> = BACKBONE.into_iter().collect();
    for n in s.entry.members() {
        edges.insert((Node::I, n.node()));
    }
    for n in s.exit.members() {
        edges.insert((n.node(), Node::O));
    }
    for (a, b) in s.internal.edges() {
        edges.insert((a.node(), b.node()));
    }
    for sc in s.shortcuts.iter() {
        edges.insert(sc.edge());
    }
    ScenarioGraph { edges }
}

/// Reflexive-transitive closure over the internal edges only.
pub fn internal_reach(s: &Scenario, from: InternalNode) -> BTreeSet<InternalNode> {
    let mut reach = BTreeSet::from([from]);
    loop {
        let before = reach.len();
        for (a, b) in s.internal.edges() {
            if reach.contains(&a) {
                reach.insert(b);
            }
        }
        if reach.len() == before {
            return reach;
        }
    }
}

/// The nine atomic scenario attributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Attribute {
    EntryP,
    EntryS,
    Mon,
    Ctl,
    ExitP,
    ExitS,
    ScOE,
    ScOI,
    ScFI,
}

impl Attribute {
    pub const ALL: [Attribute; 9] = [
        Attribute::EntryP,
        Attribute::EntryS,
        Attribute::Mon,
        Attribute::Ctl,
        Attribute::ExitP,
        Attribute::ExitS,
        Attribute::ScOE,
        Attribute::ScOI,
        Attribute::ScFI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Attribute::EntryP => "entry:P",
            Attribute::EntryS => "entry:S",
            Attribute::Mon => "mon",
            Attribute::Ctl => "ctl",
            Attribute::ExitP => "exit:P",
            Attribute::ExitS => "exit:S",
            Attribute::ScOE => "sc:OE",
            Attribute::ScOI => "sc:OI",
            Attribute::ScFI => "sc:FI",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Attribute::ALL.into_iter().find(|a| a.name() == name)
    }

    fn bit(self) -> u16 {
        1 << (self as u16)
    }
}

impl fmt::Display for Attribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Attribute {
    fn serialize<Ser: serde::Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Set of atomic attributes, stored as a 9-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AttributeVector(u16);

impl AttributeVector {
    pub fn from_attributes<I: IntoIterator<Item = Attribute>>(attrs: I) -> Self {
        AttributeVector(attrs.into_iter().fold(0, |acc, a| acc | a.bit()))
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn from_bits(bits: u16) -> Self {
        AttributeVector(bits & 0x1ff)
    }

    pub fn has(self, a: Attribute) -> bool {
        self.0 & a.bit() != 0
    }

    pub fn iter(self) -> impl Iterator<Item = Attribute> {
        Attribute::ALL.into_iter().filter(move |a| self.has(*a))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        AttributeVector(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        AttributeVector(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        AttributeVector(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn hamming(self, other: Self) -> u32 {
        (self.0 ^ other.0).count_ones()
    }

    pub fn parallel_entry(self) -> bool {
        self.has(Attribute::EntryP) && self.has(Attribute::EntryS)
    }

    pub fn dual_exit(self) -> bool {
        self.has(Attribute::ExitP) && self.has(Attribute::ExitS)
    }

    pub fn bidirectional(self) -> bool {
        self.has(Attribute::Mon) && self.has(Attribute::Ctl)
    }

    pub fn shortcut_count(self) -> usize {
        [Attribute::ScOE, Attribute::ScOI, Attribute::ScFI].into_iter().filter(|a| self.has(*a)).count()
    }

    /// Inverse of [`attributes_of`]; `None` if an entry, exit or internal
    /// invariant is violated.
    pub fn to_scenario(self) -> Option<Scenario> {
        use Attribute::*;
        let entry = NodePattern::from_flags(self.has(EntryP), self.has(EntryS))?;
        let exit = NodePattern::from_flags(self.has(ExitP), self.has(ExitS))?;
        let internal = match (self.has(Mon), self.has(Ctl)) {
            (true, true) => InternalArrangement::Bidirectional,
            (true, false) => InternalArrangement::BottomUp,
            (false, true) => InternalArrangement::TopDown,
            (false, false) => return None,
        };
        let mut shortcuts = ShortcutSet::EMPTY;
        for (attr, sc) in [(ScOE, Shortcut::OE), (ScOI, Shortcut::OI), (ScFI, Shortcut::FI)] {
            if self.has(attr) {
                shortcuts = shortcuts.with(sc);
            }
        }
        Some(Scenario::new(entry, internal, exit, shortcuts))
    }
}

impl fmt::Debug for AttributeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(Attribute::name)).finish()
    }
}

impl Serialize for AttributeVector {
    fn serialize<Ser: serde::Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        self.iter().collect::<Vec<_>>().serialize(serializer)
    }
}

pub fn attributes_of(s: &Scenario) -> AttributeVector {
    use Attribute::*;
    let mut v = Vec::with_capacity(9);
    if s.entry.contains(InternalNode::P) {
        v.push(EntryP);
    }
    if s.entry.contains(InternalNode::S) {
        v.push(EntryS);
    }
    if s.internal.has_monitoring() {
        v.push(Mon);
    }
    if s.internal.has_control() {
        v.push(Ctl);
    }
    if s.exit.contains(InternalNode::P) {
        v.push(ExitP);
    }
    if s.exit.contains(InternalNode::S) {
        v.push(ExitS);
    }
    for (sc, attr) in [(Shortcut::OE, ScOE), (Shortcut::OI, ScOI), (Shortcut::FI, ScFI)] {
        if s.shortcuts.contains(sc) {
            v.push(attr);
        }
    }
    AttributeVector::from_attributes(v)
}
