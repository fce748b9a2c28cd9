//! Config presets reproducing the case-study figures.

pub struct Preset {
    pub name: &'static str,
    pub text: &'static str,
}

impl Preset {
    /// First comment line of the preset file.
    pub fn description(&self) -> &'static str {
        self.text
            .lines()
            .next()
            .and_then(|l| l.strip_prefix('#'))
            .map(str::trim)
            .unwrap_or("")
    }
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig1",
        text: include_str!("../presets/fig1.toml"),
    },
    Preset {
        name: "fig2",
        text: include_str!("../presets/fig2.toml"),
    },
    Preset {
        name: "fig3",
        text: include_str!("../presets/fig3.toml"),
    },
    Preset {
        name: "fig4",
        text: include_str!("../presets/fig4.toml"),
    },
    Preset {
        name: "fig5",
        text: include_str!("../presets/fig5.toml"),
    },
    Preset {
        name: "fig6-n2",
        text: include_str!("../presets/fig6-n2.toml"),
    },
    Preset {
        name: "fig6-n4",
        text: include_str!("../presets/fig6-n4.toml"),
    },
    Preset {
        name: "fig6-n7",
        text: include_str!("../presets/fig6-n7.toml"),
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn every_preset_parses() {
        for p in PRESETS {
            parse_config(p.text).unwrap_or_else(|e| panic!("{}: {e}", p.name));
            assert!(!p.description().is_empty());
        }
        assert!(find("fig4").is_some());
        assert!(find("fig9").is_none());
    }
}
