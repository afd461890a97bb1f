"""Pure algebra: ground structures, actions, normal forms and law checkers."""
