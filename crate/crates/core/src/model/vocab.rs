//! Namespaces and the built-in vocabulary terms.

use super::Iri;

pub const RDF_NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS_NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema#";

macro_rules! terms {
    ($ns:expr; $($name:ident => $local:literal),* $(,)?) => {
        $(
            pub fn $name() -> Iri {
                static CELL: std::sync::OnceLock<Iri> = std::sync::OnceLock::new();
                CELL.get_or_init(|| Iri::from_static(concat!($ns, $local))).clone()
            }
        )*
    };
}

pub mod rdf {
    use super::Iri;

    terms! { "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
        type_ => "type",
        property => "Property",
        lang_string => "langString",
        statement => "Statement",
        subject => "subject",
        predicate => "predicate",
        object => "object",
        first => "first",
        rest => "rest",
        nil => "nil",
        singleton_property_of => "singletonPropertyOf",
    }

    /// `rdf:_n` container membership property IRI.
    pub fn member(n: u32) -> Iri {
        Iri::from_static(&format!("{}_{n}", super::RDF_NS))
    }
}

pub mod rdfs {
    use super::Iri;

    terms! { "http://www.w3.org/2000/01/rdf-schema#";
        class => "Class",
        literal => "Literal",
        resource => "Resource",
        datatype => "Datatype",
        sub_property_of => "subPropertyOf",
        sub_class_of => "subClassOf",
        domain => "domain",
        range => "range",
        container_membership_property => "ContainerMembershipProperty",
        member => "member",
        label => "label",
    }
}

pub mod xsd {
    use super::Iri;

    terms! { "http://www.w3.org/2001/XMLSchema#";
        string => "string",
        integer => "integer",
        unsigned_int => "unsignedInt",
        boolean => "boolean",
        decimal => "decimal",
    }
}
