namespace gqm {}
