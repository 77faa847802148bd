use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::CoreError;
use crate::Result;

/// Descriptor of a single basis state (occupation numbers, spin masks, ...).
pub trait BasisState: Clone + Eq + Hash + Debug + Send + Sync {}

impl<T: Clone + Eq + Hash + Debug + Send + Sync> BasisState for T {}

#[derive(Debug, Clone, PartialEq)]
struct Block<S> {
    label: i64,
    states: Vec<S>,
}

/// A Hilbert-space basis split into blocks of a conserved quantum number.
///
/// Each descriptor maps to a unique `(block, offset)` pair; offsets run over
/// `0..block_dim` inside every block.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockBasis<S: BasisState> {
    blocks: Vec<Block<S>>,
    index: HashMap<S, (usize, usize)>,
}

impl<S: BasisState> BlockBasis<S> {
    /// Builds a basis from `(label, states)` pairs.
    ///
    /// Labels must be distinct and every descriptor must appear once overall.
    /// Empty blocks are allowed.
    pub fn new(blocks: Vec<(i64, Vec<S>)>) -> Result<Self> {
        let mut index = HashMap::new();
        let mut seen_labels = HashMap::new();
        for (b, (label, states)) in blocks.iter().enumerate() {
            if seen_labels.insert(*label, b).is_some() {
                return Err(CoreError::InvalidBasis(format!("duplicate block label {label}")));
            }
            for (i, s) in states.iter().enumerate() {
                if index.insert(s.clone(), (b, i)).is_some() {
                    return Err(CoreError::InvalidBasis(format!("state {s:?} appears twice")));
                }
            }
        }
        let blocks = blocks
            .into_iter()
            .map(|(label, states)| Block { label, states })
            .collect();
        Ok(Self { blocks, index })
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_dim(&self, block: usize) -> usize {
        self.blocks[block].states.len()
    }

    pub fn block_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.states.len()).collect()
    }

    /// Total dimension, the sum of all block dimensions.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.states.len()).sum()
    }

    pub fn label(&self, block: usize) -> i64 {
        self.blocks[block].label
    }

    pub fn block_of_label(&self, label: i64) -> Option<usize> {
        self.blocks.iter().position(|b| b.label == label)
    }

    pub fn states(&self, block: usize) -> &[S] {
        &self.blocks[block].states
    }

    pub fn state(&self, block: usize, offset: usize) -> &S {
        &self.blocks[block].states[offset]
    }

    /// `(block, offset)` of a descriptor.
    pub fn locate(&self, state: &S) -> Option<(usize, usize)> {
        self.index.get(state).copied()
    }

    pub fn contains(&self, state: &S) -> bool {
        self.index.contains_key(state)
    }

    /// Iterates over `(block, offset, state)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(b, blk)| blk.states.iter().enumerate().map(move |(i, s)| (b, i, s)))
    }
}
